#include <gtest/gtest.h>

#include <omp.h>

#include "dtop/sweep.hpp"
#include "support.hpp"

using namespace dtop;
using namespace dtop::testing;

namespace {

class SweepTest : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

}  // namespace

TEST_F(SweepTest, BodyMomentsSerialAndParallelAgree) {
  const BodySpec cloud = sample_cone(3.0, 1.0, 0.4, 50000, 9.8, {0, 0, 1});
  const BodyMoments a = body_moments(cloud.points, Execution::serial);
  const BodyMoments b = body_moments(cloud.points, Execution::parallel);
  EXPECT_NEAR(a.mass, 3.0, 1e-11);
  EXPECT_NEAR(b.mass, a.mass, 1e-12 * a.mass);
  EXPECT_LT(norm(a.center_of_mass - b.center_of_mass), 1e-12);
  EXPECT_LT(max_abs_diff(a.mass_matrix, b.mass_matrix), 1e-12 * frobenius_norm(a.mass_matrix));
  EXPECT_NEAR(a.center_of_mass.z, 0.75, 0.01);
  // Thread count does not change the parallel result.
  omp_set_num_threads(3);
  const BodyMoments c = body_moments(cloud.points, Execution::parallel);
  EXPECT_EQ(c.mass_matrix(0, 0), b.mass_matrix(0, 0));
  EXPECT_EQ(c.center_of_mass.z, b.center_of_mass.z);
}

TEST_F(SweepTest, BatchIsIndependentOfExecution) {
  std::mt19937_64 rng(51);
  std::vector<SimulationJob> jobs(6);
  for (auto& j : jobs) {
    j.config = random_top(rng);
    j.initial.R = random_rotation(rng);
    j.initial.omega = random_vec(rng, 3.0);
    j.settings.steps = 300;
    j.settings.stride = 50;
  }
  const auto a = simulate_batch(jobs, Execution::serial);
  const auto b = simulate_batch(jobs, Execution::parallel);
  ASSERT_EQ(a.size(), jobs.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(max_abs_diff(a[i].final_state.R, b[i].final_state.R), 0.0);
    EXPECT_EQ(a[i].max_energy_drift, b[i].max_energy_drift);
    EXPECT_LT(a[i].max_energy_drift, 1e-9);
    EXPECT_LE(a[i].min_sigma, a[i].max_sigma);
  }
}

TEST_F(SweepTest, BatchPropagatesFailures) {
  std::vector<SimulationJob> jobs(3);
  for (auto& j : jobs) j.config = make_config({1, 1.5, 2}, 1, {0, 0, -0.5}, {0, 0, 1}, 9.8);
  jobs[1].settings.dt = -1.0;
  EXPECT_ANY_THROW(simulate_batch(jobs, Execution::parallel));
  EXPECT_ANY_THROW(simulate_batch(jobs, Execution::serial));
}

TEST_F(SweepTest, FrequencyTablesAreOrderedAndIdentical) {
  const SymmetricTop top = conical_symmetric_top(1.0, 1.0, 0.2, 0.6, 9.8);
  std::vector<double> gammas, alphas;
  for (int i = 1; i <= 200; ++i) {
    gammas.push_back(0.25 * i);
    alphas.push_back(1.0 * i);
  }
  const auto a = alpha_table(top, gammas, Execution::serial);
  const auto b = alpha_table(top, gammas, Execution::parallel);
  ASSERT_EQ(a.size(), gammas.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].gamma, gammas[i]);
    EXPECT_EQ(a[i].alpha, b[i].alpha);
    EXPECT_EQ(a[i].alpha, alpha_of_gamma(top, gammas[i]));
  }
  const auto r = gamma_table(top, alphas, Execution::serial);
  const auto s = gamma_table(top, alphas, Execution::parallel);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_EQ(r[i].alpha, alphas[i]);
    EXPECT_EQ(r[i].gammas, s[i].gammas);
  }
}

TEST_F(SweepTest, SigmaDeviationKernel) {
  const SymmetricTop top = conical_symmetric_top(1.0, 1.0, 0.2, 0.6, 9.8);
  std::vector<double> times;
  for (int i = 0; i < 500; ++i) times.push_back(0.002 * i);
  const double g = 20.0, al = alpha_of_gamma(top, g);
  const double a = max_sigma_deviation(top, g, al, times, Execution::serial);
  EXPECT_EQ(a, max_sigma_deviation(top, g, al, times, Execution::parallel));
  EXPECT_LT(a, 1e-12);
  EXPECT_GT(max_sigma_deviation(top, g, 1.01 * al, times, Execution::parallel), 1e-3);
}
