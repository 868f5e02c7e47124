#include <fstream>

#include "support.hpp"

using namespace dvl;
using namespace dvl::test;

TEST_CASE("make_f_r at r = 1/2") {
  const EmbeddingMap f = make_f_r(0.5);
  CHECK(distance(emb_eval(f, 1.0), emb_eval(f, -1.0)) < 1e-15);
  CHECK_THAT(a_invariant(f, 1.0) / a_invariant(f, -1.0), WithinAbs(3.0, 1e-12));
  CHECK_THROWS_AS(make_f_r(0.0), ParamOutOfRange);
  CHECK_THROWS_AS(make_f_r(1.0), ParamOutOfRange);
}

TEST_CASE("f_r equals f_{0,r}") {
  std::mt19937_64 rng(89);
  const EmbeddingMap a = make_f_r(0.4);
  const EmbeddingMap b = make_f_rs(0.0, 0.4);
  for (int k = 0; k < 10; ++k) {
    const cplx z = random_point(rng, 1.0);
    CHECK(distance(emb_eval(a, z), emb_eval(b, z)) < 1e-15);
  }
}

TEST_CASE("f_{r,s} composed with b_{-r} is f_{0,(s-r)/(1-sr)}") {
  std::mt19937_64 rng(97);
  for (const auto& [r, s] : {std::pair{0.2, 0.6}, std::pair{-0.5, 0.3}, std::pair{0.7, -0.1}}) {
    const EmbeddingMap lhs = emb_compose(make_f_rs(r, s), Moebius::blaschke(-r));
    const EmbeddingMap rhs = make_f_rs(0.0, (s - r) / (1.0 - s * r));
    for (int k = 0; k < 20; ++k) {
      const cplx z = random_point(rng, 1.0);
      CHECK(distance(emb_eval(lhs, z), emb_eval(rhs, z)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(make_f_rs(0.3, 0.3), DegeneratePair);
}

TEST_CASE("normalization to the symmetric family") {
  CHECK_THAT(normalize_to_symmetric(0.0, 0.6), WithinAbs(-1.0 / 3.0, 1e-15));
  CHECK_THAT(symmetric_parameter(0.6), WithinAbs(-1.0 / 3.0, 1e-15));
  for (int k = 1; k < 100; ++k) {
    const double t = symmetric_parameter(k / 100.0);
    CHECK(t > -1.0);
    CHECK(t < 0.0);
  }
}

TEST_CASE("f_{0,rho} composed with b_t is f_{t,-t}") {
  for (const double rho : {0.1, 0.6, 0.95}) {
    const double t = symmetric_parameter(rho);
    const EmbeddingMap lhs = emb_compose(make_f_rs(0.0, rho), Moebius::blaschke(t));
    const EmbeddingMap rhs = make_f_rs(t, -t);
    double worst = 0.0;
    for (int k = 0; k < 256; ++k) {
      const cplx z = std::polar(std::sqrt((k % 16 + 0.5) / 16.0), 2.0 * kPi * (k / 16) / 16.0);
      worst = std::max(worst, distance(emb_eval(lhs, z), emb_eval(rhs, z)));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("normalize_to_symmetric_map lands in the symmetric family") {
  std::mt19937_64 rng(101);
  for (const auto& [r, s] : {std::pair{0.2, 0.6}, std::pair{0.6, 0.2}, std::pair{-0.4, 0.5}}) {
    const SymmetricNormalization n = normalize_to_symmetric_map(r, s);
    const EmbeddingMap lhs = emb_compose(make_f_rs(r, s), n.map);
    const EmbeddingMap rhs = make_f_rs(n.t, -n.t);
    for (int k = 0; k < 20; ++k) {
      const cplx z = random_point(rng, 1.0);
      CHECK(distance(emb_eval(lhs, z), emb_eval(rhs, z)) < 1e-12);
    }
  }
}

TEST_CASE("g_alpha at alpha = 1/2") {
  CHECK_THAT(g_alpha_beta(0.5), WithinAbs(-1.0 / 3.0, 1e-16));
  const RationalMap g = make_g_alpha(0.5);
  CHECK(close(rat_eval(g, 1.0), 1.0, 1e-15));
  CHECK(close(rat_eval(g, kOmega), 1.0, 1e-15));
  CHECK(close(rat_eval(g, kOmega2), 1.0, 1e-15));
  CHECK(rat_eval(g, 0.0) == cplx{0.0});
}

TEST_CASE("g_alpha is inner") {
  std::mt19937_64 rng(103);
  for (const double alpha : {-0.4, 0.0, 0.3, 0.9}) {
    const RationalMap g = make_g_alpha(alpha);
    for (int k = 0; k < 10; ++k) CHECK_THAT(std::abs(rat_eval(g, random_unimodular(rng))), WithinAbs(1.0, 1e-13));
  }
}

TEST_CASE("log_derivative_g") {
  CHECK(close(log_derivative_g(0.5, 1.0), 4.5, 1e-14));
  CHECK(log_derivative_g(0.99, 1.0).real() > 100.0);
  for (const double alpha : {0.9, 0.99, 0.999, 0.9999}) CHECK(std::abs(log_derivative_g(alpha, kOmega)) < 10.0);
  CHECK_THROWS_AS(log_derivative_g(0.5, 0.0), PoleError);

  const RationalMap g = make_g_alpha(0.3);
  const cplx z{0.2, 0.4};
  const cplx ref = rat_eval(rat_derivative(g), z) / rat_eval(g, z);
  CHECK(close(log_derivative_g(0.3, z), ref, 1e-12));
}

TEST_CASE("three-point family lies on the sphere") {
  const EmbeddingMap f = make_f_three_crossing();
  double worst = 0.0;
  for (int k = 0; k < 1024; ++k) worst = std::max(worst, std::abs(std::sqrt(norm_sq(emb_eval(f, std::polar(1.0, 2.0 * kPi * k / 1024)))) - 1.0));
  CHECK(worst <= 1e-10);
  CHECK(distance(emb_eval(f, 1.0), emb_eval(f, kOmega)) < 1e-15);
  CHECK(distance(emb_eval(f, 1.0), emb_eval(f, kOmega2)) < 1e-15);
  CHECK_THAT(a_invariant(f, kOmega), WithinRel(a_invariant(f, kOmega2), 1e-10));
}

TEST_CASE("three-point family parameter ranges") {
  CHECK_THROWS_AS(make_f_three_crossing(0.5, -0.49, -0.5), ParamOutOfRange);
  CHECK_THROWS_AS(make_f_three_crossing(0.5, -0.6, 0.9), ParamOutOfRange);
  CHECK_THROWS_AS(make_f_three_crossing(1.0, 0.2, 0.9), ParamOutOfRange);
  CHECK_NOTHROW(make_f_three_crossing(0.5, 0.3, -0.49));
}

TEST_CASE("injectivity screen has no interior roots besides zero") {
  for (const double alpha0 : {0.1, 0.5, 0.9}) {
    for (const double alpha1 : {-0.49, 0.0, alpha0, 0.95}) {
      const InjectivityScreen s = injectivity_screen(alpha0, alpha1);
      CHECK(s.passed);
      CHECK(s.counted == 1);
      CHECK(s.roots.empty());
    }
  }
}

TEST_CASE("alpha1 scan picks the catalog value") {
  const Alpha1Choice c = scan_alpha1(kCatalogAlpha0);
  CHECK(c.alpha1 == Catch::Approx(kCatalogAlpha1).margin(1e-12));
  CHECK(c.grid.size() == 149);
  CHECK(c.grid.front().first == Catch::Approx(-0.49));
  CHECK(c.grid.back().first == Catch::Approx(0.99));
}

TEST_CASE("catalog file matches the built-in constants") {
  std::ifstream in(DVL_DATA_DIR "/catalog.json");
  REQUIRE(in);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"alpha0\": 0.5") != std::string::npos);
  CHECK(text.find("\"alpha1\": -0.49") != std::string::npos);
  CHECK(text.find("\"alpha\": 0.9") != std::string::npos);
}

TEST_CASE("parse_family_ref and make_family") {
  const FamilyRef s = parse_family_ref("f_rs:r=0.2,s=-0.5");
  CHECK(s.kind == "f_rs");
  CHECK(s.params.at("r") == 0.2);
  CHECK(s.params.at("s") == -0.5);
  CHECK(parse_family_ref("f_three_crossing").params.empty());

  for (const std::string& kind : family_kinds()) {
    FamilyRef ref{kind, {{"r", 0.3}, {"s", 0.6}, {"alpha", 0.4}}};
    CHECK_NOTHROW(make_family(ref));
  }
  CHECK(make_family(parse_family_ref("g_alpha:alpha=0.5")).dim() == 1);
  CHECK(make_family(parse_family_ref("f_three_crossing")).dim() == 4);

  CHECK_THROWS_AS(parse_family_ref("f_r:r=abc"), ParamOutOfRange);
  CHECK_THROWS_AS(parse_family_ref("f_r:r"), ParamOutOfRange);
  CHECK_THROWS_AS(make_family(parse_family_ref("f_r")), ParamOutOfRange);
  CHECK_THROWS_AS(make_family(parse_family_ref("nope:r=0.1")), ParamOutOfRange);
}
