#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "measures.hpp"
#include "test_util.hpp"

using namespace lqid;
using namespace lqid::test;

namespace {

LatticePmf random_small_pmf(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<std::int64_t> coord(-3, 3);
  std::uniform_int_distribution<int> natoms(1, 5);
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  std::map<Index, double> atoms;
  int want = natoms(rng);
  while (static_cast<int>(atoms.size()) < want) {
    Index n(static_cast<std::size_t>(dim));
    for (auto& c : n) c = coord(rng);
    atoms.emplace(std::move(n), unit(rng));
  }
  double total = 0.0;
  for (auto& [n, mass] : atoms) total += mass;
  for (auto& [n, mass] : atoms) mass /= total;
  return LatticePmf(dim, std::move(atoms));
}

}  // namespace

TEST_CASE("construction validates invariants") {
  CHECK_THROWS_AS(make_pmf(1, {{Index{0}, 0.5}}), Error);                 // not normalized
  CHECK_THROWS_AS(make_pmf(1, {{Index{0}, 1.5}, {Index{1}, -0.5}}), Error);  // negative mass
  CHECK_THROWS_AS(LatticePmf(2, {{Index{0}, 1.0}}), Error);               // key dim mismatch
  CHECK_THROWS_AS(make_signed(1, {{Index{0}, 0.3}}), Error);              // origin atom
  CHECK_NOTHROW(make_signed(1, {{Index{0}, 0.0}}));                       // zero mass dropped
  CHECK(make_signed(1, {{Index{1}, 0.0}}).size() == 0);
}

TEST_CASE("convolve: dirac examples") {
  LatticePmf a = LatticePmf::dirac(Index{1, 0});
  LatticePmf b = LatticePmf::dirac(Index{0, 2});
  LatticePmf c = convolve(a, b);
  CHECK(c.at(Index{1, 2}) == doctest::Approx(1.0));
  CHECK(c.size() == 1);
}

TEST_CASE("convolve: bernoulli squared is binomial") {
  LatticePmf b = bernoulli(0.5);
  LatticePmf c = convolve(b, b);
  CHECK(c.at(Index{0}) == doctest::Approx(0.25));
  CHECK(c.at(Index{1}) == doctest::Approx(0.5));
  CHECK(c.at(Index{2}) == doctest::Approx(0.25));
}

TEST_CASE("convolve: dirac at zero is the identity") {
  std::mt19937_64 rng(7);
  for (int dim : {1, 2, 3}) {
    LatticePmf p = random_small_pmf(rng, dim);
    LatticePmf e = LatticePmf::dirac(Index(static_cast<std::size_t>(dim), 0));
    CHECK(pmf_distance(convolve(p, e), p) < 1e-15);
  }
}

TEST_CASE("convolve: dimension mismatch rejected") {
  CHECK_THROWS_AS(convolve(bernoulli(0.5), LatticePmf::dirac(Index{0, 0})), Error);
}

TEST_CASE("convolve is commutative and associative") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    int dim = 1 + static_cast<int>(rng() % 3);
    LatticePmf p = random_small_pmf(rng, dim);
    LatticePmf q = random_small_pmf(rng, dim);
    LatticePmf r = random_small_pmf(rng, dim);
    CHECK(pmf_distance(convolve(p, q), convolve(q, p)) < 1e-12);
    CHECK(pmf_distance(convolve(convolve(p, q), r), convolve(p, convolve(q, r))) < 1e-12);
  }
}

TEST_CASE("project: examples") {
  LatticePmf u = make_pmf(2, {{Index{0, 0}, 0.25},
                              {Index{1, 0}, 0.25},
                              {Index{0, 1}, 0.25},
                              {Index{1, 1}, 0.25}});
  LatticePmf proj = project(u, Index{1, 2});
  CHECK(proj.at(Index{0}) == doctest::Approx(0.25));
  CHECK(proj.at(Index{1}) == doctest::Approx(0.25));
  CHECK(proj.at(Index{2}) == doctest::Approx(0.25));
  CHECK(proj.at(Index{3}) == doctest::Approx(0.25));

  LatticePmf degenerate = project(u, Index{0, 0});
  CHECK(degenerate.size() == 1);
  CHECK(degenerate.at(Index{0}) == doctest::Approx(1.0));

  LatticePmf collide = make_pmf(2, {{Index{1, 0}, 0.5}, {Index{0, 1}, 0.5}});
  LatticePmf one = project(collide, Index{1, 1});
  CHECK(one.size() == 1);
  CHECK(one.at(Index{1}) == doctest::Approx(1.0));
}

TEST_CASE("project commutes with convolution") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::int64_t> coord(-3, 3);
  for (int rep = 0; rep < 20; ++rep) {
    int dim = 1 + static_cast<int>(rng() % 3);
    LatticePmf p = random_small_pmf(rng, dim);
    LatticePmf q = random_small_pmf(rng, dim);
    Index a(static_cast<std::size_t>(dim));
    for (auto& c : a) c = coord(rng);
    CHECK(pmf_distance(project(convolve(p, q), a),
                       convolve(project(p, a), project(q, a))) < 1e-12);
  }
}

TEST_CASE("pushforward_signed: examples") {
  SignedLatticeMeasure v = make_signed(2, {{Index{1, 0}, 1.0}, {Index{0, 1}, 1.0}});
  SignedLatticeMeasure w = pushforward_signed(v, Index{1, 1});
  CHECK(w.at(Index{1}) == doctest::Approx(2.0));
  CHECK(w.size() == 1);

  SignedLatticeMeasure kill = make_signed(2, {{Index{1, -1}, 1.0}});
  CHECK(pushforward_signed(kill, Index{1, 1}).size() == 0);

  SignedLatticeMeasure s = make_signed(1, {{Index{1}, 0.5}, {Index{2}, -0.2}});
  SignedLatticeMeasure t = pushforward_signed(s, Index{3});
  CHECK(t.at(Index{3}) == doctest::Approx(0.5));
  CHECK(t.at(Index{6}) == doctest::Approx(-0.2));
}

TEST_CASE("pushforward_signed is linear") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> coord(-3, 3);
  std::uniform_real_distribution<double> mass(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    int dim = 1 + static_cast<int>(rng() % 3);
    std::map<Index, double> ua, ub;
    for (int i = 0; i < 4; ++i) {
      Index n(static_cast<std::size_t>(dim));
      bool zero = true;
      for (auto& c : n) {
        c = coord(rng);
        if (c != 0) zero = false;
      }
      if (zero) continue;
      ua[n] = mass(rng);
      ub[n] = mass(rng);
    }
    SignedLatticeMeasure va(dim, ua), vb(dim, ub);
    double alpha = mass(rng), beta = mass(rng);
    Index a(static_cast<std::size_t>(dim));
    for (auto& c : a) c = coord(rng);
    SignedLatticeMeasure lhs = pushforward_signed(add(scale(va, alpha), scale(vb, beta)), a);
    SignedLatticeMeasure rhs =
        add(scale(pushforward_signed(va, a), alpha), scale(pushforward_signed(vb, a), beta));
    CHECK(measure_distance(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("shift: examples and inverse") {
  LatticePmf d = shift(LatticePmf::dirac(Index{0, 0}), Index{3, -1});
  CHECK(d.at(Index{3, -1}) == doctest::Approx(1.0));

  LatticePmf b = shift(bernoulli(0.3), Index{5});
  CHECK(b.at(Index{5}) == doctest::Approx(0.7));
  CHECK(b.at(Index{6}) == doctest::Approx(0.3));

  std::mt19937_64 rng(19);
  LatticePmf p = random_small_pmf(rng, 2);
  CHECK(pmf_distance(shift(shift(p, Index{2, -5}), Index{-2, 5}), p) == 0.0);
}

TEST_CASE("product: examples") {
  LatticePmf d = product(LatticePmf::dirac(Index{0}), LatticePmf::dirac(Index{0}));
  CHECK(d.at(Index{0, 0}) == doctest::Approx(1.0));

  LatticePmf bd = product(bernoulli(0.3), LatticePmf::dirac(Index{2}));
  CHECK(bd.at(Index{0, 2}) == doctest::Approx(0.7));
  CHECK(bd.at(Index{1, 2}) == doctest::Approx(0.3));

  LatticePmf uu = product(bernoulli(0.5), bernoulli(0.5));
  for (std::int64_t i : {0, 1})
    for (std::int64_t j : {0, 1}) CHECK(uu.at(Index{i, j}) == doctest::Approx(0.25));
}

TEST_CASE("affine: examples") {
  std::mt19937_64 rng(23);
  LatticePmf p = random_small_pmf(rng, 2);
  CHECK(pmf_distance(affine(p, {1, 0, 0, 1}, Index{0, 0}), p) == 0.0);

  LatticePmf d = affine(LatticePmf::dirac(Index{1, 1}), {1, 1, 0, 1}, Index{0, 0});
  CHECK(d.at(Index{2, 1}) == doctest::Approx(1.0));

  LatticePmf b = affine(bernoulli(0.3), {2}, Index{1});
  CHECK(b.at(Index{1}) == doctest::Approx(0.7));
  CHECK(b.at(Index{3}) == doctest::Approx(0.3));

  CHECK_THROWS_AS(affine(p, {1, 1, 1, 1}, Index{0, 0}), Error);
  CHECK_THROWS_AS(affine(p, {1, 2, 2, 4}, Index{0, 0}), Error);
}

TEST_CASE("mass is conserved by project, shift, product, affine") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    LatticePmf p = random_small_pmf(rng, 2);
    LatticePmf q = random_small_pmf(rng, 1);
    auto total = [](const LatticePmf& x) {
      double t = 0.0;
      for (const auto& [n, mass] : x.atoms()) t += mass;
      return t;
    };
    CHECK(total(project(p, Index{2, -1})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(total(shift(p, Index{1, 1})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(total(product(p, q)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(total(affine(p, {2, 1, 1, 1}, Index{0, 3})) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("hahn-jordan style split helpers: add and scale") {
  SignedLatticeMeasure v = make_signed(1, {{Index{1}, 0.5}, {Index{2}, -0.2}});
  SignedLatticeMeasure w = add(v, scale(v, -1.0));
  CHECK(w.size() == 0);
  CHECK(v.total_variation() == doctest::Approx(0.7));
  CHECK(v.total_mass() == doctest::Approx(0.3));
}
