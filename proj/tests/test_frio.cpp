#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ffr/frio.hpp"
#include "golden_values.hpp"
#include "support.hpp"

using namespace ffr;

TEST_CASE("thresholds") {
  SUBCASE("equal priors never reach the projective regime") {
    for (double s : {0.2, 0.5, 0.8}) {
      auto p = make_problem_delta(s, 0.0, CloningProblem::kInfiniteClones);
      CHECK(povm_only(p));
      CHECK(q_threshold(p) == doctest::Approx((1.0 + s) / 2.0).epsilon(1e-14));
      CHECK(q_threshold(p) > q_unambiguous(p));
      CHECK(q_unambiguous(p) == doctest::Approx(s).epsilon(1e-14));
    }
  }

  SUBCASE("s = 0 reduces Q_th to 2 eta1 eta2") {
    auto p = make_problem(0.0, 0.2, CloningProblem::kInfiniteClones);
    CHECK(q_threshold(p) == doctest::Approx(2.0 * 0.2 * 0.8).epsilon(1e-14));
  }

  SUBCASE("golden threshold for s = 0.8, eta1 = 0.1") {
    auto p = make_problem_delta(0.8, 0.8, CloningProblem::kInfiniteClones);
    CHECK_FALSE(povm_only(p));
    CHECK(q_threshold(p) == doctest::Approx(golden::kQthS08D08).epsilon(1e-14));
    CHECK(q_zero(p) == doctest::Approx(0.48).epsilon(1e-14));
    CHECK(q_one(p) == doctest::Approx(0.676).epsilon(1e-14));
    CHECK(q_unambiguous(p) == q_one(p));
    CHECK(q_threshold(p) < q_unambiguous(p));
  }
}

TEST_CASE("frio_success endpoints and goldens") {
  SUBCASE("unambiguous endpoint gives certainty") {
    auto p = make_problem_delta(0.7, 0.0, CloningProblem::kInfiniteClones);
    auto f = frio_success(p, 0.7);
    CHECK(f.p_tilde_s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.regime == FrioRegime::kPovm);
  }

  SUBCASE("projective golden value") {
    auto p = make_problem_delta(0.8, 0.8, CloningProblem::kInfiniteClones);
    auto f = frio_success(p, 0.3);
    CHECK(f.regime == FrioRegime::kProjective);
    CHECK(f.p_tilde_s == doctest::Approx(golden::kPtsProjS08D08Q03).epsilon(1e-14));
    CHECK(f.r == doctest::Approx(frio_r(p, 0.3)));
  }

  SUBCASE("povm golden value, single-regime priors") {
    auto p = make_problem_delta(0.7, 0.1, CloningProblem::kInfiniteClones);
    CHECK(povm_only(p));
    auto f = frio_success(p, 0.2);
    CHECK(f.regime == FrioRegime::kPovm);
    CHECK(f.p_tilde_s == doctest::Approx(golden::kPtsPovmS07D01Q02).epsilon(1e-14));
  }

  SUBCASE("out-of-range Q") {
    auto p = make_problem_delta(0.7, 0.1, CloningProblem::kInfiniteClones);
    CHECK_THROWS_AS(frio_success(p, -0.1), domain_error);
    CHECK_THROWS_AS(frio_success(p, q_unambiguous(p) + 0.01), domain_error);
  }
}

TEST_CASE("regime seam at Q_th") {
  auto p = make_problem_delta(0.8, 0.8, CloningProblem::kInfiniteClones);
  const double q_th = q_threshold(p);

  SUBCASE("both formulas agree at the threshold") {
    const double qbar = 1.0 - q_th;
    const double diff = q_th - q_zero(p);
    const double povm =
        (qbar + std::sqrt(qbar * qbar - diff * diff)) / (2.0 * qbar);
    const double c = std::sqrt(1.0 - 0.64);
    const double r = frio_r(p, q_th);
    const double num = (p.eta2 - p.eta1) * (p.eta2 - q_th) * c * c +
                       qbar * 0.64 + 2.0 * p.eta1 * 0.8 * c * r;
    const double proj = p.eta2 / qbar * num / (0.64 + p.delta * p.delta * c * c);
    CHECK(std::abs(povm - proj) <= 1e-10);
  }

  SUBCASE("value and first derivative continuous, curvature jumps") {
    const auto pts = [&](double q) { return frio_success(p, q).p_tilde_s; };
    const double d4 = std::abs(pts(q_th - 1e-4) - pts(q_th + 1e-4));
    const double d6 = std::abs(pts(q_th - 1e-6) - pts(q_th + 1e-6));
    CHECK(d4 <= 1e-3);
    CHECK(d6 <= d4 / 50.0);  // difference shrinks linearly with the window

    const double h = 1e-4;
    const double slope_left = (pts(q_th) - pts(q_th - h)) / h;
    const double slope_right = (pts(q_th + h) - pts(q_th)) / h;
    CHECK(std::abs(slope_left - slope_right) <= 1e-2);

    const auto d2_left = (pts(q_th) - 2.0 * pts(q_th - h) + pts(q_th - 2.0 * h)) /
                         (h * h);
    const auto d2_right = (pts(q_th + 2.0 * h) - 2.0 * pts(q_th + h) + pts(q_th)) /
                          (h * h);
    CHECK(std::abs(d2_right - d2_left) > 0.1);  // the curvature jump
  }
}

TEST_CASE("success probability is non-decreasing in Q") {
  testsupport::Rng rng(55);
  for (int i = 0; i < 20; ++i) {
    auto p = make_problem_delta(rng.uniform(0.1, 0.9), rng.uniform(0.0, 0.9),
                                CloningProblem::kInfiniteClones);
    const double q_ud = q_unambiguous(p);
    double prev = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const double pts = frio_success(p, q_ud * k / 200.0).p_tilde_s;
      if (k > 0) CHECK(pts >= prev - 1e-12);
      prev = pts;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(frio_success(p, 0.0).p_tilde_s >= 0.5);
  }
}

TEST_CASE("projective success probability solves the implicit equation") {
  testsupport::Rng rng(56);
  int cases = 0;
  while (cases < 200) {
    auto p = make_problem_delta(rng.uniform(0.05, 0.95), rng.uniform(0.0, 0.95),
                                CloningProblem::kInfiniteClones);
    if (povm_only(p)) continue;
    const double q_th = q_threshold(p);
    const double q_ud = q_unambiguous(p);
    const double q = q_th + rng.uniform(0.0, 0.999) * (q_ud - q_th);
    const auto f = frio_success(p, q);
    const double qbar = 1.0 - q;
    const double a = (1.0 - f.p_tilde_s) / p.eta1;
    const double b = 1.0 / qbar - a;
    REQUIRE(b >= -1e-15);
    const double s = p.s;
    const double inner =
        std::sqrt(a) * s + std::sqrt(std::max(0.0, b)) * f.c;
    CHECK(std::abs(p.eta2 * inner * inner - f.p_tilde_s) <= 1e-10);
    ++cases;
  }
}

TEST_CASE("frio_clone_fidelity") {
  auto p = make_problem(0.5, 0.4, 1);

  SUBCASE("unambiguous probabilities give fidelity one") {
    const double q1 = 0.2, q2 = 0.1;
    const double q = p.eta1 * q1 + p.eta2 * q2;
    auto f = frio_clone_fidelity(p, 1.0 - q1, 1.0 - q2, 0.0, 0.0, q);
    CHECK(f.fidelity == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("golden sample at n = 1") {
    auto f = frio_clone_fidelity(p, 0.7, 0.8, 0.05, 0.05, golden::kFrioCloneQN1);
    CHECK(f.fidelity == doctest::Approx(golden::kFrioCloneFidN1).epsilon(1e-14));
  }

  SUBCASE("infinite clones collapse to the conditional success probability") {
    auto pinf = make_problem(0.5, 0.4, CloningProblem::kInfiniteClones);
    auto f = frio_clone_fidelity(pinf, 0.7, 0.8, 0.05, 0.05, golden::kFrioCloneQN1);
    const double expect =
        (pinf.eta1 * 0.7 + pinf.eta2 * 0.8) / (1.0 - golden::kFrioCloneQN1);
    CHECK(f.fidelity == doctest::Approx(expect).epsilon(1e-14));
  }

  SUBCASE("inconsistent budget is rejected") {
    CHECK_THROWS_AS(frio_clone_fidelity(p, 0.7, 0.8, 0.05, 0.05, 0.5),
                    consistency_error);
    CHECK_THROWS_AS(frio_clone_fidelity(p, 1.2, 0.8, 0.0, 0.0, 0.1), domain_error);
    CHECK_THROWS_AS(frio_clone_fidelity(p, 0.9, 0.8, 0.2, 0.0, 0.1), domain_error);
  }
}

TEST_CASE("frio_r rejects an imaginary radicand") {
  auto p = make_problem_delta(0.8, 0.8, CloningProblem::kInfiniteClones);
  CHECK_THROWS_AS(frio_r(p, 1e-6), consistency_error);
}
