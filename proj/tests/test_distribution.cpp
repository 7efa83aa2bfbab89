#include "doctest.h"

#include "gtz/distribution.hpp"

#include <cmath>
#include <sstream>

using namespace gtz;

TEST_CASE("theta weight") {
  CHECK(theta_weight(Levels{1}) == 1);
  CHECK(theta_weight(Levels{2}) == 0);
  CHECK(theta_weight(Levels{1, 2}) == 0);
  CHECK(theta_weight(Levels{1, 1}) == 1);
  CHECK_THROWS_AS(theta_weight(Levels{0}), UsageError);
}

TEST_CASE("eigenvalue means") {
  const std::vector<cplx> v{1.0, 2.0, 3.0};
  CHECK(lambda_mean(make_test_function("z"), v) == cplx(2.0));
  CHECK(lambda_mean(make_test_function("1"), v) == cplx(1.0));
  CHECK_THROWS_AS(lambda_mean(make_test_function("z"), std::vector<cplx>{}), UsageError);

  const GMatrix t = build_g_toeplitz(make_symbol("twocos"), Levels{8}, Levels{1});
  double closed = 0.0;
  for (int j = 1; j <= 8; ++j) closed += 4.0 * std::pow(std::cos(j * kPi / 9.0), 2) / 8.0;
  const SpectrumResult spec = eigenvalues(t);
  CHECK(std::abs(lambda_mean(make_test_function("z^2"), spec) - closed) < 1e-12);

  SpectrumResult sv;
  sv.singular_values = std::vector<double>{3.0, 1.0};
  CHECK(lambda_mean(make_test_function("z"), sv, SpectrumMode::singular) == cplx(2.0));

  const TestFunction f = make_test_function("re2"), g = make_test_function("abs");
  const TestFunction comb{"comb", [&](cplx z) { return 2.0 * f(z) - 3.0 * g(z); }};
  const cplx lhs = lambda_mean(comb, spec);
  const cplx rhs = 2.0 * lambda_mean(f, spec) - 3.0 * lambda_mean(g, spec);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("reference integrals") {
  const Symbol c = make_symbol("twocos");
  CHECK(std::abs(reference_integral(make_test_function("1"), make_symbol("test2_f1"), 256).value - 1.0) < 1e-14);
  CHECK(std::abs(reference_integral(make_test_function("z"), c, 256).value) < 1e-14);
  const IntegralEstimate sq = reference_integral(make_test_function("z^2"), c, 256);
  CHECK(std::abs(sq.value - 2.0) < 1e-13);
  CHECK(sq.error_estimate < 1e-13);
  CHECK(std::abs(reference_integral(make_test_function("1"), make_symbol("test4_f2"), 256).value - 1.0) < 1e-14);
  CHECK_THROWS_AS(reference_integral(make_test_function("z"), c, 128), UsageError);

  // Mean of Re(f1) = 1 + x over [-pi, pi].
  const IntegralEstimate m = reference_integral(make_test_function("z"), make_symbol("test1_f1"), 4096);
  CHECK(std::abs(m.value.real() - 1.0) < 1e-12);
  CHECK(std::abs(m.value.imag() - kPi * kPi / 3.0) < 1e-5);
}

TEST_CASE("cluster counts") {
  const std::vector<cplx> zeros(10, 0.0);
  const ClusterReport z = cluster_report(zeros, 0.1, Levels{10}, Levels{2});
  CHECK(z.count == 0);
  CHECK(z.rate == 0.0);

  const std::vector<cplx> v{0.05, cplx(0.0, 0.1), 0.2, 0.0999, 1.0};
  const ClusterReport r = cluster_report(v, 0.1, Levels{5}, Levels{2});
  CHECK(r.count == 3);
  CHECK(r.rate == 3.0 / 5.0);
  std::int64_t prev = 6;
  for (double eps : {0.01, 0.05, 0.0999, 0.1, 0.5, 2.0}) {
    const auto c = cluster_report(v, eps, Levels{5}, Levels{2});
    const auto below = std::count_if(v.begin(), v.end(), [&](cplx x) { return std::abs(x) < eps; });
    CHECK(c.count == 5 - below);
    CHECK(c.count <= prev);
    prev = c.count;
  }
  CHECK_THROWS_AS(cluster_report(v, 0.0, Levels{5}, Levels{2}), UsageError);
  CHECK(boundary_moduli(v, 0.1) == std::vector<double>{0.0999, 0.1});

  // Test 2 pair at n=400, g=20: one outlier at eps=0.01.
  const GMatrix a = product_matrix(make_symbol("test2_f1"), make_symbol("test2_f2"), Levels{400}, Levels{20});
  const ClusterReport t2 = cluster_report(eigenvalues(a).eigenvalues, 0.01, Levels{400}, Levels{20});
  CHECK(t2.count == 1);
  CHECK(t2.rate == 0.0025);
}

TEST_CASE("moment checks") {
  const MomentReport g2 = moment_check(make_symbol("test2_f1"), make_symbol("test2_f2"), Levels{20}, Levels{2}, 3);
  for (const cplx& r : g2.reference) CHECK(r == cplx(0.0));

  const Symbol two = constant_symbol(2.0);
  const MomentReport c = moment_check(two, two, Levels{10}, Levels{1}, 1);
  CHECK(std::abs(c.empirical[0] - 4.0) < 1e-14);
  CHECK(std::abs(c.reference[0] - 4.0) < 1e-14);

  const MomentReport s = moment_check(make_symbol("mode:1"), make_symbol("mode:-1"), Levels{64}, Levels{1}, 1);
  CHECK(std::abs(s.empirical[0] - 63.0 / 64.0) < 1e-14);
  CHECK(std::abs(s.reference[0] - 1.0) < 1e-12);
  CHECK(std::abs(s.gaps[0] - 1.0 / 64.0) < 1e-12);
  CHECK_THROWS_AS(moment_check(two, two, Levels{4}, Levels{1}, 9), UsageError);
}

TEST_CASE("rank bound for Fejer means") {
  const Symbol e = make_symbol("mode:1");
  const RankBoundReport a = rank_bound_check(e, e, 1, 16, 1);
  CHECK(a.defect_rank <= 2);
  CHECK(a.asserted);
  CHECK(a.pass);

  const RankBoundReport z = rank_bound_check(make_symbol("test1_f1"), make_symbol("test1_f2"), 0, 16, 1);
  CHECK(z.defect_rank == 0);

  const RankBoundReport t = rank_bound_check(make_symbol("test1_f1"), make_symbol("test1_f2"), 4, 64, 1);
  CHECK(t.bound == 8);
  CHECK(t.defect_rank <= 8);

  const RankBoundReport g2 = rank_bound_check(make_symbol("test1_f1"), make_symbol("test1_f2"), 4, 64, 2);
  CHECK_FALSE(g2.asserted);
  CHECK_THROWS_AS(rank_bound_check(e, e, 4, 9, 1), UsageError);
}

TEST_CASE("asymptotic equivalence values") {
  const EquivalenceReport c = equivalence_check(constant_symbol(2.0), constant_symbol(3.0), {8, 30}, 1);
  for (const auto& p : c.points) CHECK(p.value == 0.0);

  const Symbol e = make_symbol("mode:1");
  const EquivalenceReport s = equivalence_check(e, e, {8, 16, 32}, 1);
  REQUIRE(s.points.size() == 3);
  // T(e^{it})^2 - T(e^{2it}) vanishes: the product of two lower shifts is the double shift.
  for (const auto& p : s.points) CHECK(p.value == 0.0);

  const EquivalenceReport m = equivalence_check(e, make_symbol("mode:-1"), {8, 16, 32}, 1);
  // Shift times its adjoint misses one corner entry, so the value is exactly 1/n.
  for (const auto& p : m.points) CHECK(std::abs(p.value - 1.0 / static_cast<double>(p.n)) < 1e-12);
  CHECK(m.points[1].value < m.points[0].value);
  CHECK(m.points[2].value < m.points[1].value);
  CHECK(m.non_increasing);
}

TEST_CASE("polynomial trace-norm bound") {
  const Symbol f1 = make_symbol("test3_f1"), f2 = make_symbol("test3_f2");
  const PolyTraceReport zero = poly_tracenorm_check(f1, f2, {}, 40, 2);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.pass);

  const PolyTraceReport lin = poly_tracenorm_check(f1, f2, {0.0, 1.0}, 40, 2);
  CHECK(lin.reference == 0.0);
  CHECK(lin.pass);

  const Symbol one = constant_symbol(1.0);
  const PolyTraceReport sq = poly_tracenorm_check(one, one, {0.0, 0.0, 1.0}, 12, 1);
  CHECK(std::abs(sq.lhs - 1.0) < 1e-12);
  CHECK(std::abs(sq.reference - 1.0) < 1e-12);
  CHECK(sq.pass);
}

TEST_CASE("Szego baseline for 2cos t") {
  for (const char* id : {"re2", "abs", "z^2"}) {
    const SzegoReport r = szego_check(make_test_function(id), make_symbol("twocos"), 256);
    CHECK_MESSAGE(r.gap <= 0.05, id);
  }
}

TEST_CASE("tail columns shrink relative to n") {
  double prev = 1e300;
  for (std::int64_t n : {50, 100, 200}) {
    const double v = tail_tracenorm_ratio(make_symbol("test2_f1"), n, 2);
    CHECK(v <= 1.05 * prev);
    prev = v;
  }
  CHECK(tail_tracenorm_ratio(make_symbol("test2_f1"), 50, 1) == 0.0);
}

TEST_CASE("report tables and JSON") {
  std::vector<ClusterReport> reps;
  reps.push_back(cluster_report(std::vector<cplx>(100, 1.0), 0.1, Levels{100}, Levels{2}));
  reps.push_back(cluster_report(std::vector<cplx>(50, 1.0), 0.1, Levels{50}, Levels{2}));
  std::ostringstream md;
  write_cluster_tables_md(reps, md);
  CHECK(md.str().find("| n = 50 | n = 100 |") != std::string::npos);
  CHECK(md.str().find("| r | 1.0000 | 1.0000 |") != std::string::npos);

  std::ostringstream csv;
  write_cluster_tables_csv(reps, csv);
  CHECK(csv.str() == "g,epsilon,n,count,rate\n2,0.10000000000000001,50,50,1.0000\n2,0.10000000000000001,100,100,1.0000\n");
  std::ostringstream empty;
  write_cluster_tables_csv({}, empty);
  CHECK(empty.str() == "g,epsilon,n,count,rate\n");

  const auto j = to_json(reps[0], true);
  CHECK(j["count"] == 100);
  CHECK(j["eigenvalues"].size() == 100);
}
