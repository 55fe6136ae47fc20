#include <doctest.h>

#include <numbers>

#include "convfix/dual.hpp"
#include "convfix/rng.hpp"
#include "convfix/serialize.hpp"

using namespace convfix;

namespace {

std::vector<cplx> character_values(const GroupPtr& g, const CharacterMap& chi) {
  std::vector<cplx> values(g->order());
  for (int t = 0; t < g->order(); ++t) values[t] = chi.at(t);
  return values;
}

}  // namespace

TEST_CASE("make_dual certifies the spec fixtures") {
  SUBCASE("constant one on Z4 is positive definite with norm 1") {
    const GroupPtr z4 = build_group("cyclic:4");
    const DualFunction d = make_dual(z4, std::vector<cplx>(4, cplx{1.0, 0.0}));
    CHECK(d.positive_definite());
    CHECK(d.certificate().kind == CertificateKind::PositiveDefinite);
    CHECK(*d.certificate().norm == doctest::Approx(1.0));
  }

  SUBCASE("the order-3 character on Z6 is positive definite") {
    const GroupPtr z6 = build_group("cyclic:6");
    std::vector<cplx> values(6);
    for (int n = 0; n < 6; ++n)
      values[n] = std::polar(1.0, 2.0 * std::numbers::pi * n / 3.0);
    const DualFunction d = make_dual(z6, values);
    CHECK(d.positive_definite());
    CHECK(*d.certificate().norm == doctest::Approx(1.0));
  }

  SUBCASE("the indicator of {0,2,4} in Z6 is positive definite with norm 1") {
    const GroupPtr z6 = build_group("cyclic:6");
    std::vector<cplx> values(6, cplx{0.0, 0.0});
    for (int n : {0, 2, 4}) values[n] = 1.0;
    const DualFunction d = make_dual(z6, values);
    CHECK(d.positive_definite());
    CHECK(*d.certificate().norm == doctest::Approx(1.0));
  }

  SUBCASE("a non-PSD function on an abelian carrier still gets an exact TV certificate") {
    const GroupPtr z4 = build_group("cyclic:4");
    std::vector<cplx> values = {cplx{0.0, 0.0}, cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}};
    const DualFunction d = make_dual(z4, values);  // omega = indicator of {1}
    CHECK_FALSE(d.positive_definite());
    CHECK(d.certificate().kind == CertificateKind::AbelianTV);
    REQUIRE(d.tv_measure());
    // delta_1 as a B(Z4) element is an average of 4 characters: tv = 1.
    CHECK(*d.certificate().norm == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("non-abelian non-PSD input is honestly unverified") {
    const GroupPtr s3 = build_group("symmetric:3");
    std::vector<cplx> values(6, cplx{0.0, 0.0});
    values[1] = 1.0;
    const DualFunction d = make_dual(s3, values);
    CHECK(d.certificate().kind == CertificateKind::Unverified);
    CHECK_FALSE(d.certificate().norm.has_value());
  }
}

TEST_CASE("abelian TV certificate matches the positive-definite norm") {
  // For PSD omega on an abelian carrier both certificates exist and agree.
  Rng rng(61);
  for (const char* spec : {"cyclic:4", "cyclic:6", "product(cyclic:2,cyclic:3)"}) {
    const GroupPtr g = build_group(spec);
    const DualGroup dual = dual_group(g);
    const int n = g->order();
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<cplx> nu(n);
      double mass = 0.0;
      for (int chi = 0; chi < n; ++chi) {
        nu[chi] = rng.uniform(0.05, 1.0);
        mass += nu[chi].real();
      }
      std::vector<cplx> values(n, cplx{0.0, 0.0});
      for (int t = 0; t < n; ++t)
        for (int chi = 0; chi < n; ++chi)
          values[t] += (nu[chi] / mass) * std::conj(dual.pairing(chi, t));
      const DualFunction d = make_dual(g, values);
      CHECK(d.positive_definite());
      REQUIRE(d.tv_measure());
      CHECK(tv_norm(*d.tv_measure()) == doctest::Approx(values[g->identity()].real()).epsilon(1e-10));
    }
  }
}

TEST_CASE("fourier transforms round trip") {
  Rng rng(62);
  for (const char* spec : {"cyclic:4", "cyclic:12", "product(cyclic:2,cyclic:2)"}) {
    const GroupPtr g = build_group(spec);
    const DualGroup dual = dual_group(g);
    DrawProfile profile;
    profile.kind = MeasureProfile::Complex;
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMeasure m = random_contractive(g, rng.next(), profile);
      ComplexMeasure back = inverse_fourier(g, fourier_transform(m, dual), dual);
      back -= m;
      CHECK(tv_norm(back) <= 1e-12);

      // The B(G) realisation inverts b_norm_measure.
      std::vector<cplx> values(g->order());
      for (int t = 0; t < g->order(); ++t) values[t] = m.at(t);
      const ComplexMeasure nu = b_norm_measure(g, values, dual);
      const std::vector<cplx> realised = dual_transform(nu, dual);
      double dev = 0.0;
      for (int t = 0; t < g->order(); ++t) dev = std::max(dev, std::abs(realised[t] - values[t]));
      CHECK(dev <= 1e-12);
    }
  }
}

TEST_CASE("pointwise powers") {
  const GroupPtr z6 = build_group("cyclic:6");
  std::vector<cplx> values(6);
  for (int n = 0; n < 6; ++n) values[n] = std::polar(1.0, 2.0 * std::numbers::pi * n / 3.0);
  const DualFunction chi = make_dual(z6, values);

  SUBCASE("characters power to characters") {
    const DualFunction sq = pointwise_power(chi, 2);
    for (int n = 0; n < 6; ++n)
      CHECK(std::abs(sq.at(n) - std::polar(1.0, 2.0 * std::numbers::pi * 2.0 * n / 3.0)) < 1e-12);
    CHECK(sq.positive_definite());
    const DualFunction cubed = pointwise_power(chi, 3);
    for (int n = 0; n < 6; ++n) CHECK(std::abs(cubed.at(n) - cplx{1.0, 0.0}) < 1e-12);
  }

  SUBCASE("constant one is a fixed point of powering") {
    const DualFunction one = make_dual(z6, std::vector<cplx>(6, cplx{1.0, 0.0}));
    const DualFunction p = pointwise_power(one, 5);
    for (int n = 0; n < 6; ++n) CHECK(p.at(n) == cplx{1.0, 0.0});
  }

  SUBCASE("cos squared expands into three toral atoms") {
    AtomicToralMeasure toral;
    const double theta = 1.1;
    toral.atoms.push_back({cplx{0.5, 0.0}, theta});
    toral.atoms.push_back({cplx{0.5, 0.0}, 2.0 * std::numbers::pi - theta});
    const DualFunction cos_fn = make_dual_lattice(toral);
    const DualFunction sq = pointwise_power(cos_fn, 2);
    REQUIRE(sq.toral().atoms.size() == 3);
    // Atom at angle 0 carries weight 1/2; the two at +-2 theta carry 1/4.
    double w0 = 0.0, wside = 0.0;
    for (const auto& atom : sq.toral().atoms) {
      if (std::abs(atom.angle) < 1e-9 || std::abs(atom.angle - 2.0 * std::numbers::pi) < 1e-9)
        w0 = atom.coeff.real();
      else
        wside = atom.coeff.real();
    }
    CHECK(w0 == doctest::Approx(0.5));
    CHECK(wside == doctest::Approx(0.25));
    // And the values agree pointwise with cos^2.
    for (long long n = -5; n <= 5; ++n)
      CHECK(std::abs(sq.at_lattice(n) - std::pow(std::cos(n * theta), 2.0)) < 1e-12);
  }
}

TEST_CASE("z_set reproduces the spec examples") {
  const GroupPtr z6 = build_group("cyclic:6");

  SUBCASE("order-3 character on Z6") {
    std::vector<cplx> values(6);
    for (int n = 0; n < 6; ++n) values[n] = std::polar(1.0, 2.0 * std::numbers::pi * n / 3.0);
    const ZSetReport rep = z_set(make_dual(z6, values));
    CHECK(rep.z_set == std::vector<int>{0, 3});
    CHECK(rep.is_coset);
    REQUIRE(rep.rep);
    CHECK(*rep.rep == 0);
    REQUIRE(rep.subgroup);
    CHECK(rep.subgroup->elements == std::vector<int>{0, 3});
  }

  SUBCASE("constant one has Z = G") {
    const ZSetReport rep = z_set(make_dual(z6, std::vector<cplx>(6, cplx{1.0, 0.0})));
    CHECK(rep.z_set.size() == 6);
    CHECK(rep.is_coset);
  }

  SUBCASE("strictly contractive functions have empty Z") {
    const GroupPtr z2 = build_group("cyclic:2");
    const ZSetReport rep = z_set(make_dual(z2, std::vector<cplx>(2, cplx{0.5, 0.0})));
    CHECK(rep.z_set.empty());
    CHECK(rep.contractive);
  }

  SUBCASE("a genuine coset with representative off the identity") {
    // omega(t) = psi(t - s0) for psi the indicator of {0,3} <= Z6: Z = s0 + {0,3}.
    std::vector<cplx> values(6, cplx{0.0, 0.0});
    const int s0 = 1;
    for (int t = 0; t < 6; ++t)
      if ((t - s0) % 3 == 0) values[t] = 1.0;
    const ZSetReport rep = z_set(make_dual(z6, values));
    CHECK(rep.z_set == std::vector<int>{1, 4});
    CHECK(rep.is_coset);
    CHECK(*rep.rep == 1);
    CHECK(rep.subgroup->elements == std::vector<int>{0, 3});
  }
}

TEST_CASE("vn fixed spaces are diagonal and structured") {
  const GroupPtr z6 = build_group("cyclic:6");

  SUBCASE("Z6 character fixture: dim 2 with basis lambda(0), lambda(3)") {
    std::vector<cplx> values(6);
    for (int n = 0; n < 6; ++n) values[n] = std::polar(1.0, 2.0 * std::numbers::pi * n / 3.0);
    const VnFixedReport rep = vn_fixed_space(make_dual(z6, values));
    CHECK(rep.fixed.dim() == 2);
    CHECK(rep.fixed_indices == std::vector<int>{0, 3});
    CHECK(rep.structural_match);
    CHECK(rep.ok);
  }

  SUBCASE("constant one fixes all of VN(G)") {
    const VnFixedReport rep = vn_fixed_space(make_dual(z6, std::vector<cplx>(6, cplx{1.0, 0.0})));
    CHECK(rep.fixed.dim() == 6);
    CHECK(rep.ok);
  }

  SUBCASE("empty Z forces the zero space") {
    const GroupPtr z2 = build_group("cyclic:2");
    const VnFixedReport rep = vn_fixed_space(make_dual(z2, std::vector<cplx>(2, cplx{0.5, 0.0})));
    CHECK(rep.fixed.dim() == 0);
    CHECK(rep.ok);
  }
}

TEST_CASE("coset law on constructed contractive draws") {
  Rng rng(63);
  for (const char* spec : {"cyclic:6", "dihedral:4", "quaternion8", "symmetric:3"}) {
    CAPTURE(spec);
    const GroupPtr g = build_group(spec);
    const auto subgroups = all_subgroups(g);
    const auto chars = characters_of(full_subgroup(g));
    for (int trial = 0; trial < 30; ++trial) {
      const Subgroup& k = subgroups[rng.below(subgroups.size())];
      const CharacterMap& chi = chars[rng.below(chars.size())];
      std::vector<cplx> values(g->order(), cplx{0.0, 0.0});
      for (int t : k.elements) values[t] = chi.at(t);
      const VnFixedReport rep = vn_fixed_space(make_dual(g, values));
      CHECK(rep.z.is_coset);
      CHECK(rep.structural_match);
      CHECK(rep.fixed.dim() == static_cast<int>(rep.z.z_set.size()));
    }
  }
}

TEST_CASE("multiplicative domain shadow for PSD functions with a unimodular value") {
  const GroupPtr z6 = build_group("cyclic:6");
  const auto chars = characters_of(full_subgroup(z6));
  // chi * 1_K has |omega(t0)| = 1 on K.
  const Subgroup k{z6, {0, 2, 4}};
  for (const auto& chi : chars) {
    std::vector<cplx> values(6, cplx{0.0, 0.0});
    for (int t : k.elements) values[t] = chi.at(t);
    const DualFunction d = make_dual(z6, values);
    if (!d.positive_definite()) continue;
    for (int t0 : k.elements)
      for (int s = 0; s < 6; ++s)
        CHECK(std::abs(d.at(z6->mul(s, t0)) - d.at(s) * d.at(t0)) <= 1e-8);
  }
}

TEST_CASE("non-degenerate PSD functions have trivial Z sets") {
  Rng rng(64);
  const GroupPtr z6 = build_group("cyclic:6");
  const DualGroup dual = dual_group(z6);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<cplx> nu(6);
    double mass = 0.0;
    for (int chi = 0; chi < 6; ++chi) {
      nu[chi] = rng.uniform(0.05, 1.0);
      mass += nu[chi].real();
    }
    std::vector<cplx> values(6, cplx{0.0, 0.0});
    for (int t = 0; t < 6; ++t)
      for (int chi = 0; chi < 6; ++chi)
        values[t] += (nu[chi] / mass) * std::conj(dual.pairing(chi, t));
    const DualFunction d = make_dual(z6, values);
    REQUIRE(d.positive_definite());
    CHECK(dual_nondegenerate_psd(d));
    const ZSetReport rep = z_set(d);
    CHECK(rep.nondegenerate_checked);
    CHECK(rep.nondegenerate);
    CHECK(rep.nondeg_implies_trivial);
    CHECK(rep.z_set == std::vector<int>{0});
  }

  // Degenerate example: the subgroup indicator has a large Z set.
  std::vector<cplx> values(6, cplx{0.0, 0.0});
  for (int t : {0, 3}) values[t] = 1.0;
  const DualFunction d = make_dual(z6, values);
  CHECK(d.positive_definite());
  CHECK_FALSE(dual_nondegenerate_psd(d));
}

TEST_CASE("mukherjea dual pairings on Z") {
  const double golden = 2.0 * std::numbers::pi * ((std::sqrt(5.0) - 1.0) / 2.0);

  SUBCASE("c = 1: the delta_0 pairing survives, off-Z pairings decay") {
    AtomicToralMeasure toral;
    toral.atoms.push_back({cplx{1.0, 0.0}, golden});
    const DualFunction d = make_dual_lattice(toral);
    std::vector<ComplexMeasure> fns = {ComplexMeasure::lattice_delta(0),
                                       ComplexMeasure::lattice_delta(1)};
    const MukherjeaDualReport rep = mukherjea_dual(d, fns, 4096, 1e-2);
    CHECK(rep.z_nonempty);
    CHECK(rep.consistent);
    CHECK(rep.min_cesaro_on_z == doctest::Approx(1.0));
    CHECK(rep.max_cesaro_off_z <= 1e-2);
    for (const auto& cs : rep.cases) CHECK(cs.agreement <= 1e-10);
  }

  SUBCASE("c != 1: all pairings vanish and match the geometric closed form") {
    AtomicToralMeasure toral;
    toral.atoms.push_back({std::polar(1.0, 1.0), golden});
    const DualFunction d = make_dual_lattice(toral);
    const std::vector<long long> points = {0, 1, -1, 2, 5, 13};
    std::vector<ComplexMeasure> fns;
    for (long long m : points) fns.push_back(ComplexMeasure::lattice_delta(m));
    const long long n = 4096;
    const MukherjeaDualReport rep = mukherjea_dual(d, fns, n, 1e-2);
    CHECK_FALSE(rep.z_nonempty);
    CHECK(rep.consistent);
    CHECK(rep.max_cesaro_off_z <= 1e-2);
    for (std::size_t i = 0; i < rep.cases.size(); ++i) {
      CHECK(rep.cases[i].agreement <= 1e-10);
      // |(1/n) sum z^k| <= 2 / (n |1 - z|) for each test point.
      const cplx z = d.at_lattice(points[i]);
      CHECK(std::abs(rep.cases[i].cesaro_direct) <=
            2.0 / (static_cast<double>(n) * std::abs(cplx{1.0, 0.0} - z)) + 1e-15);
    }
  }

  SUBCASE("finite carrier: characters hold their kernel pairings at one") {
    const GroupPtr z6 = build_group("cyclic:6");
    std::vector<cplx> values(6);
    for (int n = 0; n < 6; ++n) values[n] = std::polar(1.0, 2.0 * std::numbers::pi * n / 3.0);
    const DualFunction d = make_dual(z6, values);
    std::vector<ComplexMeasure> fns;
    for (int t = 0; t < 6; ++t) fns.push_back(ComplexMeasure::delta(z6, t));
    const MukherjeaDualReport rep = mukherjea_dual(d, fns, 512, 1e-2);
    CHECK(rep.z_nonempty);
    CHECK(rep.min_cesaro_on_z == doctest::Approx(1.0));
    CHECK(rep.consistent);
  }
}

TEST_CASE("abelian proposition iff and coset structure") {
  const GroupPtr z4 = build_group("cyclic:4");

  SUBCASE("delta_1: phases extend, Z nonempty") {
    const AbelianPropReport rep = abelian_prop_check(ComplexMeasure::delta(z4, 1));
    CHECK(rep.z_nonempty);
    CHECK(rep.phase_is_character);
    CHECK(rep.iff_holds);
    CHECK(rep.coset_match);
  }

  SUBCASE("(delta_1 - delta_3)/2: no character, Z empty") {
    const ComplexMeasure m = ComplexMeasure::from_atoms(
        z4, {{1, cplx{0.5, 0.0}}, {3, cplx{-0.5, 0.0}}});
    const AbelianPropReport rep = abelian_prop_check(m);
    CHECK_FALSE(rep.z_nonempty);
    CHECK_FALSE(rep.phase_is_character);
    CHECK(rep.iff_holds);
  }

  SUBCASE("uniform measure: Z is exactly the trivial character") {
    const AbelianPropReport rep = abelian_prop_check(haar_on(full_subgroup(z4)));
    CHECK(rep.z_nonempty);
    CHECK(rep.z_hat == std::vector<int>{0});
    CHECK(rep.coset_match);
  }

  SUBCASE("random unit measures never break the iff") {
    Rng rng(65);
    DrawProfile profile;
    profile.kind = MeasureProfile::Complex;
    for (const char* spec : {"cyclic:5", "cyclic:8", "cyclic:12"}) {
      const GroupPtr g = build_group(spec);
      for (int trial = 0; trial < 30; ++trial) {
        const ComplexMeasure m = random_contractive(g, rng.next(), profile);
        const AbelianPropReport rep = abelian_prop_check(m);
        CHECK(rep.iff_holds);
        if (rep.coset_checked) CHECK(rep.coset_match);
      }
    }
  }

  SUBCASE("non-abelian carriers are rejected") {
    const GroupPtr s3 = build_group("symmetric:3");
    CHECK_THROWS_AS(abelian_prop_check(haar_on(full_subgroup(s3))), Error);
  }
}

TEST_CASE("dual JSON serialisation") {
  const GroupPtr z4 = build_group("cyclic:4");
  const DualFunction d = make_dual(z4, std::vector<cplx>(4, cplx{1.0, 0.0}));
  const std::string json = dual_to_json(d);
  CHECK(json.find("\"carrier\":\"cyclic:4\"") != std::string::npos);
  CHECK(json.find("\"kind\":\"positive-definite\"") != std::string::npos);

  AtomicToralMeasure toral;
  toral.atoms.push_back({cplx{0.5, 0.0}, 1.25});
  const std::string zjson = dual_to_json(make_dual_lattice(toral));
  CHECK(zjson.find("\"carrier\":\"Z\"") != std::string::npos);
  CHECK(zjson.find("\"kind\":\"atomic-toral\"") != std::string::npos);
}
