#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "cvoam/channel.hpp"
#include "cvoam/tomography.hpp"

using namespace cvoam;

namespace {

const SqueezingSpec kSource{0.47, 4.11};
constexpr std::size_t kN = 100000;

double sample_variance(const std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= x.size();
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / (x.size() - 1);
}

} // namespace

TEST(Simulate, VacuumSingleQuadratures) {
  const auto batches = simulate_measurements(CovarianceMatrix{}, kN, 1);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(sample_variance(batches[i].samples), 1.0, 3.0 * std::sqrt(2.0 / kN));
  }
}

TEST(Simulate, SourceStateVariances) {
  const auto batches = simulate_measurements(make_tmss(kSource), kN, 2);
  const double xdiff = sample_variance(batches[static_cast<int>(Setting::Xdiff)].samples);
  EXPECT_NEAR(xdiff, 0.94, 3.0 * 0.94 * std::sqrt(2.0 / kN));
  EXPECT_NEAR(10.0 * std::log10(xdiff / 2.0), -3.3, 0.1);
  const double xc = sample_variance(batches[static_cast<int>(Setting::Xc)].samples);
  EXPECT_NEAR(xc, 2.29, 3.0 * 2.29 * std::sqrt(2.0 / kN));
  EXPECT_NEAR(10.0 * std::log10(xc), 3.6, 0.1);
}

TEST(Simulate, DeterministicPerSeed) {
  const CovarianceMatrix cm = make_tmss(kSource);
  const auto a = simulate_measurements(cm, 1000, 42);
  const auto b = simulate_measurements(cm, 1000, 42);
  const auto c = simulate_measurements(cm, 1000, 43);
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(a[i].samples, b[i].samples);
    EXPECT_NE(a[i].samples, c[i].samples);
    EXPECT_EQ(a[i].seed, derive_seed(42, i));
    // The recorded seed alone reproduces the batch.
    EXPECT_EQ(simulate_batch(a[i].setting, setting_variance(cm, a[i].setting), 1000, a[i].seed).samples,
              a[i].samples);
  }
}

TEST(Simulate, RejectsBadInput) {
  EXPECT_THROW(simulate_measurements(CovarianceMatrix{}, 1, 0), InputError);
  const CovarianceMatrix sub_vacuum(Eigen::Matrix4d(Eigen::Vector4d::Constant(0.5).asDiagonal()));
  EXPECT_THROW(simulate_measurements(sub_vacuum, 100, 0), UnphysicalStateError);
}

TEST(Variances, ConstantBatchIsDegenerate) {
  auto batches = simulate_measurements(CovarianceMatrix{}, 100, 3);
  std::fill(batches[2].samples.begin(), batches[2].samples.end(), 0.25);
  EXPECT_THROW(variances_from_batches(batches), DegenerateBatchError);
}

TEST(Variances, BatchValidation) {
  auto batches = simulate_measurements(CovarianceMatrix{}, 100, 3);
  std::vector<SampleBatch> missing(batches.begin(), batches.begin() + 5);
  EXPECT_THROW(variances_from_batches(missing), InputError);
  std::vector<SampleBatch> dup(batches.begin(), batches.end());
  dup[1].setting = Setting::Xc;
  EXPECT_THROW(variances_from_batches(dup), InputError);
  std::vector<SampleBatch> tiny(batches.begin(), batches.end());
  tiny[0].samples.resize(1);
  EXPECT_THROW(variances_from_batches(tiny), InputError);
}

TEST(Variances, VacuumNearZeroDb) {
  const VarianceSet vs = variances_from_batches(simulate_measurements(CovarianceMatrix{}, kN, 4));
  for (Setting s : kAllSettings) {
    EXPECT_NEAR(vs.get(s), 0.0, 4.0 * (*vs.stderr_db)[static_cast<int>(s)]);
  }
}

TEST(Variances, SourceRoundTrip) {
  const VarianceSet vs = variances_from_batches(simulate_measurements(make_tmss(kSource), kN, 5));
  for (Setting s : {Setting::Xc, Setting::Yc, Setting::Xp, Setting::Yp}) {
    EXPECT_NEAR(vs.get(s), 3.6, 0.1);
  }
  EXPECT_NEAR(vs.get(Setting::Xdiff), -3.3, 0.1);
  EXPECT_NEAR(vs.get(Setting::Ysum), -3.3, 0.1);
  EXPECT_NEAR((*vs.stderr_db)[0], 10.0 / std::log(10.0) * std::sqrt(2.0 / (kN - 1)), 1e-15);
}

TEST(Variances, OrderOfBatchesIrrelevant) {
  const auto batches = simulate_measurements(make_tmss(kSource), 5000, 6);
  std::vector<SampleBatch> shuffled(batches.rbegin(), batches.rend());
  const VarianceSet a = variances_from_batches(batches);
  const VarianceSet b = variances_from_batches(shuffled);
  EXPECT_EQ(a.db, b.db);
  EXPECT_EQ(*a.stderr_db, *b.stderr_db);
}

TEST(Reconstruct, MeasuredVarianceLevels) {
  VarianceSet vs;
  vs.db = {3.6, 3.6, 3.6, 3.6, -3.3, -3.3};
  const Reconstruction r = reconstruct_cm(vs);
  EXPECT_NEAR(r.cm(Xc, Xc), 2.29, 0.01);
  EXPECT_NEAR(r.cm(Xc, Xp), 1.82, 0.01);
  EXPECT_NEAR(r.cm(Yc, Yp), -1.82, 0.01);
  EXPECT_EQ(r.cm(Xc, Yp), 0.0);
  EXPECT_EQ(r.cm(Yc, Xp), 0.0);
}

TEST(Reconstruct, ZeroDbIsVacuum) {
  VarianceSet vs;
  const Reconstruction r = reconstruct_cm(vs);
  EXPECT_LE((r.cm.matrix() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Reconstruct, UnphysicalDataWarnsInsteadOfThrowing) {
  VarianceSet vs;
  vs.db = {0.0, 0.0, 0.0, 0.0, -3.0, -3.0};
  const Reconstruction r = reconstruct_cm(vs);
  EXPECT_FALSE(r.validity.passed());
  ASSERT_EQ(r.warnings.size(), 1u);
}

TEST(Reconstruct, ExactForAnalyticVariances) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double v = 0.05 + 0.95 * unit(rng);
    const CovarianceMatrix truth =
        apply_channel(make_tmss(SqueezingSpec::from_variances(v, (1 + 3 * unit(rng)) / v)), {unit(rng), 2 * unit(rng)});
    const Reconstruction r = reconstruct_cm(analytic_variances(truth));
    EXPECT_LE((r.cm.matrix() - truth.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Reconstruct, SumAndDifferenceFormsAgree) {
  const CovarianceMatrix cm = apply_channel(make_tmss(kSource), {0.6, 0.3});
  const double vx_sum = cm(Xp, Xp) + cm(Xc, Xc) + 2 * cm(Xp, Xc);
  const double vx_diff = cm(Xp, Xp) + cm(Xc, Xc) - 2 * cm(Xp, Xc);
  EXPECT_NEAR(covariance_from_sum(vx_sum, cm(Xp, Xp), cm(Xc, Xc)),
              covariance_from_difference(vx_diff, cm(Xp, Xp), cm(Xc, Xc)), 1e-12);
  EXPECT_NEAR(covariance_from_sum(vx_sum, cm(Xp, Xp), cm(Xc, Xc)), cm(Xp, Xc), 1e-12);
}

TEST(Reconstruct, StatisticalRoundTripWithinThreeStandardErrors) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int passes = 0;
  const int seeds = 100;
  for (int k = 0; k < seeds; ++k) {
    const double v = 0.1 + 0.9 * unit(rng);
    const CovarianceMatrix truth =
        apply_channel(make_tmss(SqueezingSpec::from_variances(v, (1 + 2 * unit(rng)) / v)), {unit(rng), unit(rng)});
    const Reconstruction r = reconstruct_cm(variances_from_batches(simulate_measurements(truth, kN, 1000 + k)));
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const double se = r.stderr_matrix(i, j);
        const double err = std::abs(r.cm(i, j) - truth(i, j));
        ok = ok && (se == 0.0 ? err == 0.0 : err <= 3.0 * se);
      }
    }
    passes += ok;
  }
  EXPECT_GE(passes, 95);
}

TEST(Certify, VacuumIsNotCertifiedEntangled) {
  int false_positives = 0;
  for (int k = 0; k < 50; ++k) {
    const CertifiedReport c = certify(variances_from_batches(simulate_measurements(CovarianceMatrix{}, kN, 500 + k)));
    false_positives += c.entangled || c.steering_class != SteeringClass::None;
  }
  EXPECT_LE(false_positives, 2);
}

TEST(Certify, NoErrorsFallsBackToPointDecisions) {
  const CovarianceMatrix cm = apply_channel(make_tmss(kSource), {0.5, 0.0});
  const CertifiedReport c = certify(analytic_variances(cm));
  EXPECT_EQ(c.nu_stderr, 0.0);
  EXPECT_TRUE(c.entangled);
  EXPECT_EQ(c.steering_class, SteeringClass::OneWayAB);
  EXPECT_NEAR(c.estimate.nu, ppt_nu(cm), 1e-12);
}

TEST(VarianceCsv, WriteAndRead) {
  const VarianceSet vs = variances_from_batches(simulate_measurements(make_tmss(kSource), 1000, 10));
  std::stringstream ss;
  write_variance_csv(ss, vs);
  EXPECT_EQ(ss.str().substr(0, 21), "setting,db,stderr_db\n");
  const VarianceSet back = read_variance_csv(ss);
  EXPECT_EQ(back.db, vs.db);
  EXPECT_EQ(*back.stderr_db, *vs.stderr_db);

  VarianceSet bare;
  bare.db = {3.6, 3.6, 3.6, 3.6, -3.3, -3.3};
  std::stringstream plain;
  write_variance_csv(plain, bare);
  EXPECT_NE(plain.str().find("Xdiff,-3.3,\n"), std::string::npos);
  EXPECT_FALSE(read_variance_csv(plain).stderr_db.has_value());
}

TEST(VarianceCsv, RejectsMalformed) {
  std::stringstream bad_header("set,db\nXc,1,\n");
  EXPECT_THROW(read_variance_csv(bad_header), InputError);
  std::stringstream missing("setting,db,stderr_db\nXc,1,\n");
  EXPECT_THROW(read_variance_csv(missing), InputError);
  std::stringstream mixed("setting,db,stderr_db\nXc,1,0.1\nYc,1,\nXp,1,\nYp,1,\nXdiff,1,\nYsum,1,\n");
  EXPECT_THROW(read_variance_csv(mixed), InputError);
  std::stringstream junk("setting,db,stderr_db\nXc,abc,\nYc,1,\nXp,1,\nYp,1,\nXdiff,1,\nYsum,1,\n");
  EXPECT_THROW(read_variance_csv(junk), InputError);
}

TEST(BatchCsv, OneColumn) {
  const SampleBatch b = simulate_batch(Setting::Ysum, 2.0, 3, 77);
  std::stringstream ss;
  write_batch_csv(ss, b);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "Ysum");
  int rows = 0;
  while (std::getline(ss, line)) {
    EXPECT_EQ(line.find(','), std::string::npos);
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}
