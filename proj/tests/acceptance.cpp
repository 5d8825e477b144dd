// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cvoam/channel.hpp"
#include "cvoam/criteria.hpp"
#include "cvoam/modes.hpp"
#include "cvoam/tomography.hpp"

using namespace cvoam;

namespace {

const SqueezingSpec kSource{0.47, 4.11};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

CovarianceMatrix output(double eta, double delta, const SqueezingSpec& spec = kSource) {
  return apply_channel(make_tmss(spec), {eta, delta});
}

Outcome source_ppt() {
  Outcome o;
  const auto t0 = Clock::now();
  const double nu = ppt_nu(make_tmss(kSource));
  const double ms = ms_since(t0);
  o.require(std::abs(nu - 0.470) <= 0.005, fmt("nu=%.6f", nu));
  o.require(std::abs(nu - 0.46) <= 0.02, fmt("nu=%.6f outside 0.46+-0.02", nu));
  o.require(ms < 1.0, fmt("took %.3f ms", ms));
  o.detail = o.pass ? fmt("nu=%.6f in %.4f ms", nu, ms) : o.detail;
  return o;
}

Outcome death_thresholds() {
  Outcome o;
  const double deltas[] = {0.15, 0.5, 1.0};
  const double model[] = {0.105, 0.281, 0.437};
  const double rounded[] = {0.10, 0.28, 0.44};
  std::string values;
  for (int i = 0; i < 3; ++i) {
    const auto t0 = Clock::now();
    const auto eta = entanglement_death_eta(kSource, deltas[i]);
    const double ms = ms_since(t0);
    if (!eta) {
      o.require(false, fmt("delta=%.2f never dies", deltas[i]));
      continue;
    }
    o.require(std::abs(*eta - model[i]) <= 0.01, fmt("delta=%.2f eta*=%.6f vs %.3f", deltas[i], *eta, model[i]));
    o.require(std::abs(*eta - rounded[i]) <= 0.01, fmt("delta=%.2f eta*=%.6f vs %.2f", deltas[i], *eta, rounded[i]));
    o.require(ms < 10.0, fmt("delta=%.2f took %.3f ms", deltas[i], ms));
    values += fmt("%.4f ", *eta);
  }
  if (o.pass) o.detail = "eta* = " + values;
  return o;
}

Outcome loss_robustness() {
  Outcome o;
  std::vector<double> grid{0.001};
  for (int k = 1; k <= 100; ++k) grid.push_back(k / 100.0);
  double prev = 2.0;
  for (double eta : grid) {
    const double nu = ppt_nu(output(eta, 0.0));
    o.require(nu < 1.0, fmt("eta=%.3f nu=%.9f", eta, nu));
    o.require(nu <= prev + 1e-12, fmt("nu not monotone at eta=%.3f", eta));
    prev = nu;
  }
  const double nu_small = ppt_nu(output(1e-6, 0.0));
  o.require(1.0 - nu_small < 1e-5, fmt("nu(1e-6)=%.9f", nu_small));
  if (o.pass) o.detail = fmt("nu<1 on %.0f points, nu(0.001)=%.6f", static_cast<double>(grid.size()), ppt_nu(output(0.001, 0.0)));
  return o;
}

Outcome one_way_steering() {
  Outcome o;
  const double star = lossy_b_to_a_death_eta(kSource);
  o.require(std::abs(star - 0.783) <= 0.001, fmt("eta*=%.6f", star));
  const auto bisected = steering_death_eta(kSource, 0.0, SteeringDirection::BToA);
  o.require(bisected && std::abs(*bisected - star) <= 1e-5, "bisection disagrees with closed form");
  for (int k = 1; k <= 1000; ++k) {
    const double eta = k / 1000.0;
    const Steerability g = steering_raw(output(eta, 0.0));
    o.require(g.a_to_b > 0.0, fmt("gAB<=0 at eta=%.3f", eta));
    if (std::abs(eta - star) > 1e-9) {
      o.require((g.b_to_a > 0.0) == (eta > star), fmt("gBA sign wrong at eta=%.3f", eta));
    }
  }
  if (o.pass) o.detail = fmt("B->A boundary %.6f (closed form), bisection %.6f", star, *bisected);
  return o;
}

Outcome steering_sudden_death() {
  Outcome o;
  const auto ab = steering_death_eta(kSource, 0.15, SteeringDirection::AToB);
  const auto ba = steering_death_eta(kSource, 0.15, SteeringDirection::BToA);
  if (!ab || !ba) {
    o.require(false, "a direction survives to eta -> 0");
    return o;
  }
  o.require(*ab > 0.0 && *ba > 0.0, "non-positive death point");
  o.require(std::abs(*ab - 0.490) <= 0.005, fmt("A->B %.6f", *ab));
  o.require(std::abs(*ba - 0.806) <= 0.005, fmt("B->A %.6f", *ba));
  o.require(*ba > *ab, "B->A does not die later than A->B");
  if (o.pass) o.detail = fmt("A->B %.6f, B->A %.6f", *ab, *ba);
  return o;
}

Outcome tomography_round_trip() {
  Outcome o;
  const CovarianceMatrix truth = make_tmss(kSource);
  const double nu_true = ppt_nu(truth);
  int variance_ok = 0;
  int nu_ok = 0;
  double slowest = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto t0 = Clock::now();
    const VarianceSet vs = variances_from_batches(simulate_measurements(truth, 100000, seed));
    const Reconstruction rec = reconstruct_cm(vs);
    const double nu = ppt_nu(rec.cm);
    slowest = std::max(slowest, ms_since(t0));
    bool ok = true;
    for (Setting s : kAllSettings) {
      ok = ok && std::abs(vs.get(s) - (is_joint(s) ? -3.3 : 3.6)) <= 0.1;
    }
    variance_ok += ok;
    nu_ok += std::abs(nu - nu_true) <= 0.02;
  }
  o.require(variance_ok >= 95, fmt("variances in band for %.0f/100 seeds", variance_ok));
  o.require(nu_ok >= 95, fmt("nu within 0.02 for %.0f/100 seeds", nu_ok));
  o.require(slowest < 5000.0, fmt("slowest seed %.1f ms", slowest));
  if (o.pass) o.detail = fmt("variances %.0f/100, nu %.0f/100, slowest seed %.1f ms", variance_ok, nu_ok, slowest);
  return o;
}

Outcome charge_invariance() {
  Outcome o;
  const MultiplexedState source = make_multiplexed({{0, kSource}, {1, kSource}, {2, kSource}});
  int points = 0;
  for (double delta : {0.0, 0.15, 0.5, 1.0}) {
    for (int k = 0; k <= 100; ++k) {
      const MultiplexedState out = apply_channel(source, {k / 100.0, delta});
      const CriteriaReport ref = classify(out.at(0).cm);
      for (int l : {1, 2}) {
        const CriteriaReport r = classify(out.at(l).cm);
        o.require(out.at(l).cm == out.at(0).cm && r.nu == ref.nu && r.gAB == ref.gAB && r.gBA == ref.gBA &&
                      r.entangled == ref.entangled && r.steering_class == ref.steering_class,
                  fmt("l=%.0f differs at eta=%.2f delta=%.2f", l, k / 100.0, delta));
      }
      ++points;
    }
  }
  for (double delta : {0.15, 0.5, 1.0}) {
    o.require(entanglement_death_eta(source.at(0).spec, delta) == entanglement_death_eta(source.at(2).spec, delta),
              "threshold depends on l");
  }
  if (o.pass) o.detail = fmt("bit-identical for l=0,1,2 over %.0f channel points", points);
  return o;
}

Outcome physicality_suite() {
  Outcome o;
  std::mt19937_64 rng(20241019);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_gap = 0.0;
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const double v = 0.02 + 0.98 * unit(rng);
    const SqueezingSpec spec = SqueezingSpec::from_variances(v, (1.0 + 4.0 * unit(rng)) / v);
    const CovarianceMatrix cm = output(unit(rng), 3.0 * unit(rng), spec);
    const ValidityReport vr = validate(cm);
    const double gap = std::abs(ppt_nu(cm) - ppt_nu_spectral(cm));
    worst_gap = std::max(worst_gap, gap);
    const CriteriaReport r = classify(cm);
    const bool steer_implies_ent = r.steering_class == SteeringClass::None || r.entangled;
    if (!vr.passed() || gap > 1e-9 || !steer_implies_ent) ++failures;
  }
  o.require(failures == 0, fmt("%.0f failing draws, worst path gap %.3g", failures, worst_gap));
  if (o.pass) o.detail = fmt("10000 draws, worst path gap %.3g", worst_gap);
  return o;
}

Outcome modes_diagnostic() {
  Outcome o;
  double slowest = 0.0;
  std::string counts;
  for (int l = -2; l <= 2; ++l) {
    const auto t0 = Clock::now();
    const StripeCount s = count_dark_stripes(tilted_lens_pattern(lg_field({l, 1.0}, {512, 512, 6.0}), 2.0));
    slowest = std::max(slowest, ms_since(t0));
    o.require(s.count == std::abs(l) && !s.indeterminate, fmt("l=%.0f counted %.0f", l, s.count));
    counts += std::to_string(s.count) + " ";
  }
  o.require(slowest < 2000.0, fmt("slowest mode %.1f ms", slowest));
  if (o.pass) o.detail = "counts " + counts + fmt("(slowest %.1f ms)", slowest);
  return o;
}

} // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"source-state PPT value", source_ppt},
      {"entanglement sudden-death thresholds", death_thresholds},
      {"loss robustness at zero excess noise", loss_robustness},
      {"one-way steering structure", one_way_steering},
      {"steering sudden death at delta=0.15", steering_sudden_death},
      {"tomography round trip", tomography_round_trip},
      {"topological-charge invariance", charge_invariance},
      {"physicality suite", physicality_suite},
      {"tilted-lens stripe counts", modes_diagnostic},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    failed += !o.pass;
    ++index;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
