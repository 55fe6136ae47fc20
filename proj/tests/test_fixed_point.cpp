#include <doctest.h>

#include "convfix/fixed_point.hpp"
#include "convfix/rng.hpp"

using namespace convfix;

namespace {

const double kPi = 3.14159265358979323846;

ComplexMeasure z4_half_diff() {
  return ComplexMeasure::from_atoms(build_group("cyclic:4"),
                                    {{0, cplx{0.5, 0.0}}, {2, cplx{-0.5, 0.0}}});
}

DrawProfile complex_profile() {
  DrawProfile p;
  p.kind = MeasureProfile::Complex;
  return p;
}

}  // namespace

TEST_CASE("operator_matrix conventions") {
  const GroupPtr z2 = build_group("cyclic:2");

  // delta_e gives the identity operator.
  const Eigen::MatrixXcd id = operator_matrix(ComplexMeasure::delta(z2, 0), Convention::Left);
  CHECK((id - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

  // delta_1 on Z2 is the swap.
  const Eigen::MatrixXcd swap = operator_matrix(ComplexMeasure::delta(z2, 1), Convention::Left);
  CHECK(swap(0, 1) == cplx{1.0, 0.0});
  CHECK(swap(1, 0) == cplx{1.0, 0.0});
  CHECK(swap(0, 0) == cplx{0.0, 0.0});

  // m_G is the rank-one averaging matrix.
  const GroupPtr z4 = build_group("cyclic:4");
  const Eigen::MatrixXcd avg = operator_matrix(haar_on(full_subgroup(z4)), Convention::Left);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(avg(i, j) - cplx{0.25, 0.0}) < 1e-15);

  // (L_{delta_a} f)(t) = f(a t) exactly, on a non-abelian group.
  const GroupPtr s3 = build_group("symmetric:3");
  for (int a = 0; a < 6; ++a) {
    const Eigen::MatrixXcd l = operator_matrix(ComplexMeasure::delta(s3, a), Convention::Left);
    for (int t = 0; t < 6; ++t)
      for (int u = 0; u < 6; ++u)
        CHECK(l(t, u) == (s3->mul(a, t) == u ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
  }

  // Row absolute sums equal the tv norm.
  Rng rng(5);
  const ComplexMeasure m = random_contractive(s3, rng.next(), complex_profile());
  const Eigen::MatrixXcd l = operator_matrix(m, Convention::Left);
  for (int t = 0; t < 6; ++t) {
    double row = 0.0;
    for (int u = 0; u < 6; ++u) row += std::abs(l(t, u));
    CHECK(row == doctest::Approx(tv_norm(m)).epsilon(1e-12));
  }
}

TEST_CASE("left and right operators commute") {
  Rng rng(17);
  for (const char* spec : {"symmetric:3", "dihedral:4", "quaternion8"}) {
    const GroupPtr g = build_group(spec);
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMeasure a = random_contractive(g, rng.next(), complex_profile());
      const ComplexMeasure b = random_contractive(g, rng.next(), complex_profile());
      const Eigen::MatrixXcd left = operator_matrix(a, Convention::Left);
      const Eigen::MatrixXcd right = operator_matrix(b, Convention::Right);
      CHECK((left * right - right * left).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("fixed_subspace on spec examples") {
  const GroupPtr z4 = build_group("cyclic:4");

  CHECK(fixed_subspace(ComplexMeasure::delta(z4, 0)).dim() == 4);

  const Subspace twisted = fixed_subspace(z4_half_diff());
  CHECK(twisted.dim() == 2);
  // All fixed vectors satisfy f(t+2) = -f(t).
  for (int col = 0; col < twisted.dim(); ++col)
    for (int t = 0; t < 4; ++t)
      CHECK(std::abs(twisted.basis((t + 2) % 4, col) + twisted.basis(t, col)) < 1e-10);

  const ComplexMeasure minus = cplx{-1.0, 0.0} * ComplexMeasure::delta(z4, 0);
  CHECK(fixed_subspace(minus).dim() == 0);

  // (delta_1 - delta_3)/2 has no fixed points.
  const ComplexMeasure no_char = ComplexMeasure::from_atoms(
      z4, {{1, cplx{0.5, 0.0}}, {3, cplx{-0.5, 0.0}}});
  CHECK(fixed_subspace(no_char).dim() == 0);
}

TEST_CASE("fixed space dimension matches the eigenvalue-one count") {
  // Independent oracle: peripheral spectrum of a power-bounded matrix is
  // semisimple, so the geometric eigenspace matches the eigenvalue count.
  Rng rng(31);
  for (const char* spec : {"cyclic:6", "symmetric:3", "dihedral:4"}) {
    const GroupPtr g = build_group(spec);
    for (int trial = 0; trial < 30; ++trial) {
      ComplexMeasure m = random_contractive(g, rng.next(), complex_profile());
      const Eigen::MatrixXcd l = operator_matrix(m, Convention::Left);
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(l);
      int count = 0;
      for (int i = 0; i < eig.eigenvalues().size(); ++i)
        if (std::abs(eig.eigenvalues()(i) - cplx{1.0, 0.0}) < 1e-8) ++count;
      CHECK(fixed_subspace(m).dim() == count);
    }
  }
}

TEST_CASE("predicted fixed spaces") {
  const GroupPtr z4 = build_group("cyclic:4");
  const Subgroup h{z4, {0, 2}};
  const auto chars = characters_of(h);
  const CharacterMap& sign_char = chars[1];
  REQUIRE(std::abs(sign_char.at(2) - cplx{-1.0, 0.0}) < 1e-12);

  const Subspace predicted = predicted_fixed_space(z4, h, sign_char);
  CHECK(predicted.dim() == 2);
  // Defining property, checked directly on the basis.
  for (int col = 0; col < 2; ++col)
    for (int s : h.elements)
      for (int t = 0; t < 4; ++t)
        CHECK(std::abs(predicted.basis(z4->mul(s, t), col) -
                       std::conj(sign_char.at(s)) * predicted.basis(t, col)) < 1e-12);

  CHECK(predicted_fixed_space(z4, trivial_subgroup(z4),
                              CharacterMap::trivial(trivial_subgroup(z4)))
            .dim() == 4);
  CHECK(predicted_fixed_space(z4, full_subgroup(z4),
                              CharacterMap::trivial(full_subgroup(z4)))
            .dim() == 1);
}

TEST_CASE("computed bases are orthonormal") {
  Rng rng(271);
  for (const char* spec : {"cyclic:6", "symmetric:3", "quaternion8"}) {
    const GroupPtr g = build_group(spec);
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMeasure m = random_contractive(g, rng.next(), complex_profile());
      for (const Subspace& s : {fixed_subspace(m), ideal_I_omega(m).ideal}) {
        if (s.dim() == 0) continue;
        const Eigen::MatrixXcd gram = s.basis.adjoint() * s.basis;
        CHECK((gram - Eigen::MatrixXcd::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff() <=
              1e-12);
      }
    }
  }
}

TEST_CASE("subspace equality and principal angles") {
  const GroupPtr z4 = build_group("cyclic:4");
  const Subspace a = fixed_subspace(z4_half_diff());
  CHECK(subspace_equal(a, a, 1e-10).equal);
  CHECK(subspace_equal(a, a, 1e-10).angle <= 1e-12);

  const Subspace constants = predicted_fixed_space(
      z4, full_subgroup(z4), CharacterMap::trivial(full_subgroup(z4)));
  CHECK_FALSE(subspace_equal(constants, a, 1e-8).equal);  // dim 1 vs 2

  // Two different orthonormal bases of one plane.
  Subspace p1, p2;
  p1.basis = Eigen::MatrixXcd::Zero(4, 2);
  p1.basis(0, 0) = 1.0;
  p1.basis(1, 1) = 1.0;
  p2.basis = Eigen::MatrixXcd::Zero(4, 2);
  const double r = 1.0 / std::sqrt(2.0);
  p2.basis(0, 0) = r;
  p2.basis(1, 0) = r;
  p2.basis(0, 1) = r;
  p2.basis(1, 1) = -r;
  CHECK(subspace_equal(p1, p2, 1e-10).equal);

  // A plane rotated by a known angle out of its span.
  const double theta = 1e-6;
  Subspace p3 = p1;
  p3.basis(1, 1) = std::cos(theta);
  p3.basis(2, 1) = std::sin(theta);
  CHECK(principal_angle(p1, p3) == doctest::Approx(theta).epsilon(1e-6));
}

TEST_CASE("extract_character on spec examples") {
  const GroupPtr z4 = build_group("cyclic:4");

  const auto twisted = extract_character(z4_half_diff());
  REQUIRE(std::holds_alternative<CharacterMap>(twisted));
  CHECK(std::abs(std::get<CharacterMap>(twisted).at(2) - cplx{-1.0, 0.0}) < 1e-12);

  const ComplexMeasure no_char = ComplexMeasure::from_atoms(
      z4, {{1, cplx{0.5, 0.0}}, {3, cplx{-0.5, 0.0}}});
  CHECK(std::holds_alternative<NoCharacter>(extract_character(no_char)));

  // Any probability yields the trivial character on its generated subgroup.
  Rng rng(3);
  DrawProfile profile;
  profile.kind = MeasureProfile::RealSigned;
  profile.density = 0.7;
  ComplexMeasure prob = absolute_value(random_contractive(z4, rng.next(), profile));
  prob *= cplx{1.0 / tv_norm(prob), 0.0};
  const auto triv = extract_character(prob);
  REQUIRE(std::holds_alternative<CharacterMap>(triv));
  for (int h : std::get<CharacterMap>(triv).domain().elements)
    CHECK(std::abs(std::get<CharacterMap>(triv).at(h) - cplx{1.0, 0.0}) < 1e-12);
}

TEST_CASE("verify_character_factorization across profiles and groups") {
  Rng rng(404);
  for (const char* spec : {"cyclic:4", "cyclic:6", "product(cyclic:2,cyclic:2)", "symmetric:3",
                           "dihedral:4", "quaternion8"}) {
    CAPTURE(spec);
    const GroupPtr g = build_group(spec);
    const auto subgroups = all_subgroups(g);

    for (int trial = 0; trial < 40; ++trial) {
      DrawProfile profile;
      switch (trial % 3) {
        case 0: profile.kind = MeasureProfile::Complex; break;
        case 1: profile.kind = MeasureProfile::RealSigned; break;
        default: {
          profile.kind = MeasureProfile::CharacterTwisted;
          const Subgroup& h = subgroups[rng.below(subgroups.size())];
          const auto chars = characters_of(h);
          profile.twist_subgroup = h;
          profile.twist_character = chars[rng.below(chars.size())];
        }
      }
      const ComplexMeasure m = random_contractive(g, rng.next(), profile);
      const FixedPointReport report = verify_character_factorization(m, 1e-8);
      CHECK(report.ok);
      if (report.dim_fix > 0) CHECK(report.character.has_value());
      if (report.conflict) CHECK(report.dim_fix == 0);
    }
  }
}

TEST_CASE("fix transport is independent of the coset extension choice") {
  const GroupPtr z6 = build_group("cyclic:6");
  const Subgroup h{z6, {0, 3}};
  const auto chars = characters_of(h);
  const CharacterMap& chi = chars[1];

  DrawProfile profile;
  profile.kind = MeasureProfile::CharacterTwisted;
  profile.density = 1.0;
  profile.twist_subgroup = h;
  profile.twist_character = chi;
  const ComplexMeasure m = random_contractive(z6, 12345, profile);

  const Subspace fix_abs = fixed_subspace(absolute_value(m));
  const Eigen::VectorXcd c0 = character_extension_vector(z6, h, chi, 0);
  const Eigen::VectorXcd c1 = character_extension_vector(z6, h, chi, 3);
  const Subspace t0 = pointwise_scale(fix_abs, c0);
  const Subspace t1 = pointwise_scale(fix_abs, c1);
  CHECK(subspace_equal(t0, t1, 1e-10).equal);
  CHECK(subspace_equal(t0, fixed_subspace(m), 1e-8).equal);
}

TEST_CASE("cesaro projection checks") {
  const GroupPtr z4 = build_group("cyclic:4");
  CesaroOptions opts;

  SUBCASE("adapted delta walk projects onto constants") {
    const CesaroTrace trace = cesaro_limit(ComplexMeasure::delta(z4, 1), opts);
    const CesaroProjectionReport rep = cesaro_projection_check(trace, 1e-8);
    CHECK(rep.ok);
    CHECK(rep.dim_fix == 1);
  }

  SUBCASE("zero verdict forces zero fixed space") {
    const ComplexMeasure minus = cplx{-1.0, 0.0} * ComplexMeasure::delta(z4, 0);
    const CesaroTrace trace = cesaro_limit(minus, opts);
    const CesaroProjectionReport rep = cesaro_projection_check(trace, 1e-8);
    CHECK(rep.ok);
    CHECK(rep.dim_fix == 0);
  }

  SUBCASE("idempotents project onto their own fixed space") {
    const CesaroTrace trace = cesaro_limit(z4_half_diff(), opts);
    const CesaroProjectionReport rep = cesaro_projection_check(trace, 1e-8);
    CHECK(rep.ok);
    CHECK(rep.dim_fix == 2);
  }

  SUBCASE("undecided traces are rejected") {
    CesaroTrace fake;
    fake.measure = ComplexMeasure::delta(z4, 0);
    fake.verdict = CesaroTrace::Verdict::Undecided;
    CHECK_THROWS_AS(cesaro_projection_check(fake, 1e-8), Error);
  }
}

TEST_CASE("ideal I_omega matches the pre-annihilator identity") {
  const GroupPtr z4 = build_group("cyclic:4");
  const GroupPtr z2 = build_group("cyclic:2");

  SUBCASE("delta_e gives the zero ideal") {
    const IdealReport rep = ideal_I_omega(ComplexMeasure::delta(z4, 0));
    CHECK(rep.dim_ideal == 0);
    CHECK(rep.dim_fix == 4);
    CHECK(rep.rank_sum_exact);
  }

  SUBCASE("m_Z2 gives the augmentation ideal") {
    const IdealReport rep = ideal_I_omega(haar_on(full_subgroup(z2)));
    CHECK(rep.dim_ideal == 1);
    CHECK(rep.dim_fix == 1);
    CHECK(rep.is_state);
    CHECK(rep.equals_augmentation_ideal);
  }

  SUBCASE("delta_1 on Z4 witnesses I_max = ell^1_0") {
    const IdealReport rep = ideal_I_omega(ComplexMeasure::delta(z4, 1));
    CHECK(rep.dim_ideal == 3);
    CHECK(rep.dim_fix == 1);
    CHECK(rep.is_state);
    CHECK(rep.equals_augmentation_ideal);
    CHECK(rep.annihilator_angle <= 1e-8);
  }

  SUBCASE("rank sum is exact on random draws") {
    Rng rng(77);
    for (const char* spec : {"cyclic:6", "symmetric:3", "quaternion8"}) {
      const GroupPtr g = build_group(spec);
      for (int trial = 0; trial < 20; ++trial) {
        const ComplexMeasure m = random_contractive(g, rng.next(), complex_profile());
        const IdealReport rep = ideal_I_omega(m);
        CHECK(rep.rank_sum_exact);
        CHECK(rep.annihilator_angle <= 1e-8);
      }
    }
  }
}

TEST_CASE("lp fixed points") {
  const GroupPtr z4 = build_group("cyclic:4");

  SUBCASE("adapted probability gives the constants for every p") {
    Rng rng(8);
    DrawProfile profile;
    profile.kind = MeasureProfile::RealSigned;
    profile.density = 1.0;
    ComplexMeasure prob = absolute_value(random_contractive(z4, rng.next(), profile));
    prob *= cplx{1.0 / tv_norm(prob), 0.0};
    for (double p : {1.0, 2.0, 3.5}) {
      const LpReport rep = lp_fixed_points(prob, p);
      CHECK(rep.fixed.dim() == 1);
      CHECK(rep.character_found);
      CHECK(rep.range_match);
      CHECK(rep.adapted);
    }
  }

  SUBCASE("i delta_1 fixes the line through t -> (-i)^t") {
    const ComplexMeasure m = cplx{0.0, 1.0} * ComplexMeasure::delta(z4, 1);
    const LpReport rep = lp_fixed_points(m, 2.0);
    REQUIRE(rep.fixed.dim() == 1);
    CHECK(rep.range_match);
    Eigen::MatrixXcd expected(4, 1);
    for (int t = 0; t < 4; ++t) expected(t, 0) = 0.5 * std::pow(cplx{0.0, -1.0}, t);
    Subspace line;
    line.basis = expected;
    CHECK(principal_angle(rep.fixed, line) < 1e-10);
  }

  SUBCASE("p below one is rejected") {
    CHECK_THROWS_AS(lp_fixed_points(ComplexMeasure::delta(z4, 0), 0.5), Error);
  }
}

TEST_CASE("lattice windowed decay for the simple random walk") {
  const ComplexMeasure walk = ComplexMeasure::lattice_from_atoms(
      {{-1, cplx{0.5, 0.0}}, {1, cplx{0.5, 0.0}}});
  const double sup = lattice_windowed_cesaro_sup(walk, 64, 2048);
  CHECK(sup <= 0.05);
  CHECK(sup > 0.001);  // the mass has not vanished, only spread
}

TEST_CASE("representation fixed points") {
  const GroupPtr z2 = build_group("cyclic:2");
  const GroupPtr z4 = build_group("cyclic:4");

  SUBCASE("regular representation of Z2 with the swap") {
    const auto pi = regular_representation(*z2);
    const RepFixedReport rep = representation_fixed_points(pi, ComplexMeasure::delta(z2, 1));
    REQUIRE(rep.fixed.dim() == 1);
    CHECK(rep.matched);
    // Fixed vectors are the diagonal {(a, a)}.
    CHECK(std::abs(rep.fixed.basis(0, 0) - rep.fixed.basis(1, 0)) < 1e-12);
  }

  SUBCASE("trivial representation fixes everything for a state") {
    std::vector<Eigen::MatrixXcd> pi(4, Eigen::MatrixXcd::Identity(3, 3));
    const RepFixedReport rep = representation_fixed_points(pi, haar_on(full_subgroup(z4)));
    CHECK(rep.fixed.dim() == 3);
    CHECK(rep.matched);
  }

  SUBCASE("regular rep of Z4 with i delta_1 has a one-dimensional fixed space") {
    const auto pi = regular_representation(*z4);
    const ComplexMeasure m = cplx{0.0, 1.0} * ComplexMeasure::delta(z4, 1);
    const RepFixedReport rep = representation_fixed_points(pi, m);
    CHECK(rep.fixed.dim() == 1);
    CHECK(rep.matched);
  }

  SUBCASE("non-homomorphic input is rejected") {
    std::vector<Eigen::MatrixXcd> pi(4, Eigen::MatrixXcd::Identity(2, 2));
    pi[1](0, 0) = 2.0;  // not unitary
    CHECK_THROWS_AS(representation_fixed_points(pi, ComplexMeasure::delta(z4, 1)), Error);
  }

  SUBCASE("two-dimensional irreps are valid and fix nothing for adapted states") {
    for (const char* spec : {"dihedral:4", "quaternion8", "symmetric:3"}) {
      const GroupPtr g = build_group(spec);
      const auto pi = irrep_2d(*g);
      // Validated inside the call; uniform measure has pi(m) = average = 0
      // on a nontrivial irrep, so no fixed vectors.
      const RepFixedReport rep = representation_fixed_points(pi, haar_on(full_subgroup(g)));
      CHECK(rep.fixed.dim() == 0);
      CHECK(rep.matched);
    }
  }
}

TEST_CASE("mukherjea lattice equivalence") {
  SUBCASE("symmetric walk decays") {
    const ComplexMeasure walk = ComplexMeasure::lattice_from_atoms(
        {{-1, cplx{0.5, 0.0}}, {1, cplx{0.5, 0.0}}});
    const MukherjeaLatticeReport rep = mukherjea_lattice(walk, 64, 2048, 0.05);
    CHECK_FALSE(rep.compact);
    CHECK(rep.decay);
    CHECK(rep.consistent);
  }
  SUBCASE("delta_0 stays put") {
    const MukherjeaLatticeReport rep =
        mukherjea_lattice(ComplexMeasure::lattice_delta(0), 64, 256, 0.05);
    CHECK(rep.compact);
    CHECK_FALSE(rep.decay);
    CHECK(rep.consistent);
    CHECK(rep.cesaro_sup == 1.0);
  }
  SUBCASE("shifted walk decays in the window") {
    const ComplexMeasure walk = ComplexMeasure::lattice_from_atoms(
        {{2, cplx{0.5, 0.0}}, {4, cplx{0.5, 0.0}}});
    const MukherjeaLatticeReport rep = mukherjea_lattice(walk, 64, 2048, 0.05);
    CHECK_FALSE(rep.compact);
    CHECK(rep.decay);
    CHECK(rep.consistent);
  }
  SUBCASE("non-probability input is rejected") {
    const ComplexMeasure bad = ComplexMeasure::lattice_from_atoms({{0, cplx{-1.0, 0.0}}});
    CHECK_THROWS_AS(mukherjea_lattice(bad, 64, 16, 0.05), Error);
  }
}

TEST_CASE("equivalence_suite booleans coincide") {
  const GroupPtr z4 = build_group("cyclic:4");

  SUBCASE("delta_1 on Z4: all true") {
    const EquivalenceReport rep = equivalence_suite(ComplexMeasure::delta(z4, 1));
    CHECK(rep.all_equal);
    CHECK(rep.cesaro_nonzero);
    ComplexMeasure diff = rep.ergodic_limit;
    diff -= haar_on(full_subgroup(z4));
    CHECK(tv_norm(diff) < 1e-10);
  }

  SUBCASE("minus delta_e: all false") {
    const ComplexMeasure minus = cplx{-1.0, 0.0} * ComplexMeasure::delta(z4, 0);
    const EquivalenceReport rep = equivalence_suite(minus);
    CHECK(rep.all_equal);
    CHECK_FALSE(rep.cesaro_nonzero);
  }

  SUBCASE("(delta_1 - delta_3)/2: all false") {
    const ComplexMeasure m = ComplexMeasure::from_atoms(
        z4, {{1, cplx{0.5, 0.0}}, {3, cplx{-0.5, 0.0}}});
    const EquivalenceReport rep = equivalence_suite(m);
    CHECK(rep.all_equal);
    CHECK_FALSE(rep.cesaro_nonzero);
  }

  SUBCASE("random draws never split the equivalence") {
    Rng rng(55);
    for (const char* spec : {"cyclic:6", "symmetric:3", "dihedral:4"}) {
      const GroupPtr g = build_group(spec);
      for (int trial = 0; trial < 25; ++trial) {
        const ComplexMeasure m = random_contractive(g, rng.next(), complex_profile());
        CHECK(equivalence_suite(m).all_equal);
      }
    }
  }

  SUBCASE("ergodic limit agrees with the dynamical detector when it decides") {
    const CesaroTrace trace = cesaro_limit(ComplexMeasure::delta(z4, 1), CesaroOptions{});
    REQUIRE(trace.verdict == CesaroTrace::Verdict::ConvergedTo);
    ComplexMeasure diff = *trace.limit;
    diff -= ergodic_cesaro_limit(ComplexMeasure::delta(z4, 1));
    CHECK(tv_norm(diff) < 1e-9);
  }
}

TEST_CASE("reflect and lambda matrices") {
  const GroupPtr z4 = build_group("cyclic:4");
  const ComplexMeasure m = ComplexMeasure::from_atoms(
      z4, {{1, cplx{0.25, 0.5}}, {2, cplx{-0.25, 0.0}}});
  const ComplexMeasure r = reflect(m);
  CHECK(r.at(3) == m.at(1));
  CHECK(r.at(2) == m.at(2));

  // lambda(nu) equals the left operator of the reflected measure.
  const Eigen::MatrixXcd lam = lambda_matrix(m);
  const Eigen::MatrixXcd lref = operator_matrix(reflect(m), Convention::Left);
  CHECK((lam - lref).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("irrational-phase contractions stay honestly undecided") {
  const GroupPtr z4 = build_group("cyclic:4");
  const ComplexMeasure m =
      std::polar(1.0, 2.0 * kPi * 0.6180339887498949) * ComplexMeasure::delta(z4, 1);
  CesaroOptions opts;
  opts.n_max = 256;  // keep the test quick
  const CesaroTrace trace = cesaro_limit(m, opts);
  CHECK(trace.verdict == CesaroTrace::Verdict::Undecided);
  // The algebraic route still decides: no fixed points.
  CHECK(equivalence_suite(m).all_equal);
  CHECK_FALSE(equivalence_suite(m).cesaro_nonzero);
}
