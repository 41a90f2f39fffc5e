#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "support.hpp"

using namespace grntru;

namespace {

// Right upper block of the printed 28x28 basis for the toy public key.
const std::vector<IntVector> printed_tau_h{
    {115, 42, 117, 108, 73, 3, 53, 29, 108, 34, 72, 5, 36, 101},
    {53, 115, 42, 117, 108, 73, 3, 108, 34, 72, 5, 36, 101, 29},
    {3, 53, 115, 42, 117, 108, 73, 34, 72, 5, 36, 101, 29, 108},
    {73, 3, 53, 115, 42, 117, 108, 72, 5, 36, 101, 29, 108, 34},
    {108, 73, 3, 53, 115, 42, 117, 5, 36, 101, 29, 108, 34, 72},
    {117, 108, 73, 3, 53, 115, 42, 36, 101, 29, 108, 34, 72, 5},
    {42, 117, 108, 73, 3, 53, 115, 101, 29, 108, 34, 72, 5, 36},
    {29, 108, 34, 72, 5, 36, 101, 115, 42, 117, 108, 73, 3, 53},
    {108, 34, 72, 5, 36, 101, 29, 53, 115, 42, 117, 108, 73, 3},
    {34, 72, 5, 36, 101, 29, 108, 3, 53, 115, 42, 117, 108, 73},
    {72, 5, 36, 101, 29, 108, 34, 73, 3, 53, 115, 42, 117, 108},
    {5, 36, 101, 29, 108, 34, 72, 108, 73, 3, 53, 115, 42, 117},
    {36, 101, 29, 108, 34, 72, 5, 117, 108, 73, 3, 53, 115, 42},
    {101, 29, 108, 34, 72, 5, 36, 42, 117, 108, 73, 3, 53, 115},
};

// A random member of the lattice: integer combination of the basis rows.
IntVector random_member(const IntegerLattice& lat, Rng& rng) {
  const IntVector u = oracle::random_vector(lat.dim(), -3, 3, rng);
  return u * lat.basis;
}

} // namespace

TEST(NtruLattice, MatchesPrintedBasis) {
  const IntegerLattice lat = build_ntru_lattice(toy::h, toy::params());
  ASSERT_EQ(lat.dim(), 28u);
  EXPECT_EQ(lat.basis.block(0, 0, 14, 14), IntMatrix::identity(14));
  EXPECT_EQ(lat.basis.block(0, 14, 14, 14), IntMatrix::from_rows(printed_tau_h));
  EXPECT_EQ(lat.basis.block(14, 0, 14, 14), IntMatrix(14, 14));
  EXPECT_EQ(lat.basis.block(14, 14, 14, 14), 128 * IntMatrix::identity(14));
  EXPECT_EQ(determinant(lat.basis), mpz_class(1) << (7 * 14));
}

TEST(NtruLattice, ZeroKey) {
  const IntegerLattice lat = build_ntru_lattice(GroupRingElement::zero(GroupSpec::dihedral(3)), derive_params(3));
  EXPECT_EQ(lat.basis.block(0, 6, 6, 6), IntMatrix(6, 6));
}

TEST(NtruLattice, PrivateKeyIsMember) {
  const NtruParams prm = toy::params();
  EXPECT_TRUE(membership_check(LatticeVectorPair{toy::f.coeffs(), toy::g.coeffs()}, toy::h, prm.q, prm.group));
  EXPECT_TRUE(membership_check(LatticeVectorPair{IntVector(14, 0), IntVector(14, 0)}, toy::h, prm.q, prm.group));
  IntVector g1 = toy::g.coeffs();
  g1[0] += 1;
  EXPECT_FALSE(membership_check(LatticeVectorPair{toy::f.coeffs(), g1}, toy::h, prm.q, prm.group));
  const IntegerLattice lat = build_ntru_lattice(toy::h, prm);
  EXPECT_TRUE(membership_check(lat, toy::join(toy::f.coeffs(), toy::g.coeffs())));
  EXPECT_THROW(membership_check(LatticeVectorPair{IntVector(3, 0), IntVector(14, 0)}, toy::h, prm.q, prm.group),
               DimensionError);
}

TEST(NtruLattice, RandomMembersPassCongruenceCheck) {
  Rng rng(31);
  const NtruParams prm = derive_params(5);
  const KeyPair kp = keygen(prm, rng);
  const IntegerLattice lat = build_ntru_lattice(kp.h, prm);
  for (int t = 0; t < 50; ++t) {
    const IntVector v = random_member(lat, rng);
    EXPECT_TRUE(membership_check(LatticeVectorPair::split(v), kp.h, prm.q, prm.group));
    IntVector w = v;
    w.back() += 1;
    EXPECT_FALSE(membership_check(LatticeVectorPair::split(w), kp.h, prm.q, prm.group));
  }
}

TEST(Sublattices, SplitAndPrintedFirstRows) {
  const KeyHalves halves = split_public_key(toy::h, GroupSpec::dihedral(7));
  EXPECT_EQ(halves.h0, (IntVector{115, 42, 117, 108, 73, 3, 53}));
  EXPECT_EQ(halves.h1, (IntVector{29, 108, 34, 72, 5, 36, 101}));
  EXPECT_EQ(concat(halves.h0, halves.h1), toy::h.coeffs());
  EXPECT_THROW(split_public_key(GroupRingElement(IntVector(7, 0)), GroupSpec::cyclic(7)), UnsupportedGroup);

  const Sublattices subs = build_sublattices(halves, 128);
  EXPECT_EQ(subs.sum.right_block().row_vector(0), (IntVector{144, 150, 151, 180, 78, 39, 154}));
  EXPECT_EQ(subs.diff.right_block().row_vector(0), (IntVector{86, -66, 83, 36, 68, -33, -48}));
  EXPECT_EQ(subs.sum.right_block().row_vector(1), (IntVector{161, 149, 114, 122, 144, 174, 32}));
  EXPECT_EQ(determinant(subs.sum.basis), mpz_class(1) << 49);
  EXPECT_EQ(determinant(subs.diff.basis), mpz_class(1) << 49);
}

TEST(Sublattices, ZeroSecondHalfGivesEqualBlocks) {
  const IntVector h0{3, 1, 4, 1, 5};
  const Sublattices subs = build_sublattices(h0, IntVector(5, 0), 64);
  EXPECT_EQ(subs.sum.basis, subs.diff.basis);
  EXPECT_EQ(subs.sum.right_block(), circulant(h0));
  EXPECT_THROW(build_sublattices(h0, IntVector(4, 0), 64), DimensionError);
}

TEST(BlockDiagonalization, IntegerIdentity) {
  Rng rng(32);
  for (int N : {3, 5, 7, 11}) {
    const GroupSpec G = GroupSpec::dihedral(N);
    for (int t = 0; t < 25; ++t) {
      const GroupRingElement a(oracle::random_vector(2 * N, -50, 50, rng));
      const IntMatrix H = to_matrix(a, G);
      const BlockDiagonalization bd = block_diagonalize(H);
      EXPECT_EQ(bd.conjugator * H * bd.conjugator, 2 * bd.diagonal);
      EXPECT_EQ(bd.conjugator * H, bd.diagonal * bd.conjugator);
      const std::size_t n = static_cast<std::size_t>(N);
      EXPECT_EQ(bd.diagonal.block(0, n, n, n), IntMatrix(n, n));
      EXPECT_EQ(bd.diagonal.block(n, 0, n, n), IntMatrix(n, n));
    }
  }
  EXPECT_EQ(block_diagonalize(IntMatrix::identity(6)).diagonal, IntMatrix::identity(6));
  IntMatrix bad = IntMatrix::identity(6);
  bad(0, 1) = 1;
  EXPECT_THROW(block_diagonalize(bad), StructureError);
}

TEST(BlockDiagonalization, BlocksAreTheSublatticeBlocks) {
  const BlockDiagonalization bd = block_diagonalize(to_matrix(toy::h, GroupSpec::dihedral(7)));
  const Sublattices subs = build_sublattices(split_public_key(toy::h, GroupSpec::dihedral(7)), 128);
  EXPECT_EQ(bd.sum_block, subs.sum.right_block());
  EXPECT_EQ(bd.diff_block, subs.diff.right_block());
}

TEST(Sublattices, ImagesOfLatticeMembers) {
  Rng rng(33);
  for (int N : {5, 7, 13}) {
    const NtruParams prm = derive_params(N);
    const KeyPair kp = keygen(prm, rng);
    const IntegerLattice lat = build_ntru_lattice(kp.h, prm);
    const Sublattices subs = build_sublattices(split_public_key(kp.h, prm.group), prm.q);
    const std::size_t n = static_cast<std::size_t>(N);
    for (int t = 0; t < 40; ++t) {
      const IntVector v = random_member(lat, rng);
      IntVector s(2 * n), d(2 * n);
      for (std::size_t i = 0; i < n; ++i) {
        s[i] = v[i] + v[n + i];
        d[i] = v[i] - v[n + i];
        s[n + i] = v[2 * n + i] + v[3 * n + i];
        d[n + i] = v[2 * n + i] - v[3 * n + i];
      }
      EXPECT_TRUE(membership_check(subs.sum, s));
      EXPECT_TRUE(membership_check(subs.diff, d));
      // pulling the images back doubles the original vector
      IntVector doubled = v;
      for (auto& x : doubled) x *= 2;
      EXPECT_EQ(pull_back(LatticeVectorPair::split(s), LatticeVectorPair::split(d), subs), doubled);
    }
  }
}

TEST(PullBack, PublishedExample) {
  const Sublattices subs = build_sublattices(split_public_key(toy::h, GroupSpec::dihedral(7)), 128);
  const LatticeVectorPair v0{toy::pb_f0, toy::pb_g0}, v1{toy::pb_f1, toy::pb_g1};
  const IntVector k = pull_back(v0, v1, subs);
  EXPECT_EQ(k, toy::join({2, 0, 2, -2, 0, -2, 2, 0, -2, 0, 2, 0, -2, 2}, {-2, 0, 2, -2, 2, 0, -2, 2, 0, 0, 2, -2, 0, 0}));
  IntVector half(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) half[i] = k[i] / 2;
  EXPECT_EQ(half, toy::join(toy::k2_f, toy::k2_g));
  EXPECT_TRUE(membership_check(LatticeVectorPair::split(k), toy::h, 128, GroupSpec::dihedral(7)));
  EXPECT_EQ(pull_back(LatticeVectorPair{IntVector(7, 0), IntVector(7, 0)}, LatticeVectorPair{IntVector(7, 0), IntVector(7, 0)}, subs),
            IntVector(28, 0));
  LatticeVectorPair bad = v0;
  bad.g[0] += 1;
  EXPECT_THROW(pull_back(bad, v1, subs), NotInLattice);
}

TEST(PullBack, RandomSublatticeMembers) {
  Rng rng(34);
  for (int N : {7, 13}) {
    const NtruParams prm = derive_params(N);
    const KeyPair kp = keygen(prm, rng);
    const Sublattices subs = build_sublattices(split_public_key(kp.h, prm.group), prm.q);
    for (int t = 0; t < 50; ++t) {
      const IntVector a = random_member(subs.sum, rng), b = random_member(subs.diff, rng);
      const IntVector k = pull_back(LatticeVectorPair::split(a), LatticeVectorPair::split(b), subs);
      EXPECT_TRUE(membership_check(LatticeVectorPair::split(k), kp.h, prm.q, prm.group));
    }
  }
}

TEST(RotationOrbit, MembersOfTheLattice) {
  const NtruParams prm = toy::params();
  const auto orbit = enumerate_rotation_orbit(toy::f.coeffs(), toy::g.coeffs());
  EXPECT_LE(orbit.size(), 2u * (2 * 7 - 1));
  EXPECT_GE(orbit.size(), 1u);
  bool has_swap = false, has_k2 = false;
  const IntVector swap = toy::join(concat(slice(toy::f.coeffs(), 7, 7), slice(toy::f.coeffs(), 0, 7)),
                                   concat(slice(toy::g.coeffs(), 7, 7), slice(toy::g.coeffs(), 0, 7)));
  const IntVector published = toy::join(toy::k2_f, toy::k2_g);
  for (const IntVector& v : orbit) {
    EXPECT_TRUE(membership_check(LatticeVectorPair::split(v), toy::h, prm.q, prm.group));
    EXPECT_EQ(norm2(v), 17);
    has_swap = has_swap || v == swap;
    has_k2 = has_k2 || v == published;
  }
  EXPECT_TRUE(has_swap);
  EXPECT_TRUE(has_k2);  // (f0^(-1), f1^(1), g0^(-1), g1^(1)) is the printed ternary key
  const auto zero = enumerate_rotation_orbit(IntVector(14, 0), IntVector(14, 0));
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_TRUE(is_zero(zero[0]));
}

TEST(RotationOrbit, RandomKeysAndNormBound) {
  Rng rng(35);
  for (int N : {7, 11, 13, 17}) {
    const NtruParams prm = derive_params(N);
    const KeyPair kp = keygen(prm, rng);
    for (const IntVector& v : enumerate_rotation_orbit(kp.f.coeffs(), kp.g.coeffs())) {
      EXPECT_TRUE(membership_check(LatticeVectorPair::split(v), kp.h, prm.q, prm.group));
      EXPECT_LE(std::sqrt(static_cast<double>(norm2(v))), std::sqrt(8.0 * N / 3 + 1) + 1e-12);
    }
  }
}

TEST(GaussianHeuristic, ClosedForms) {
  for (int N : {7, 13, 17, 19, 23}) {
    const NtruParams prm = derive_params(N);
    Rng rng(static_cast<std::uint64_t>(N));
    const KeyPair kp = keygen(prm, rng);
    const double full = gaussian_heuristic(build_ntru_lattice(kp.h, prm));
    const double half = gaussian_heuristic(build_sublattices(split_public_key(kp.h, prm.group), prm.q).sum);
    EXPECT_NEAR(full / ntru_lattice_gh_closed_form(N, prm.q), 1.0, 1e-9);
    EXPECT_NEAR(half / sublattice_gh_closed_form(N, prm.q), 1.0, 1e-9);
  }
  // direct evaluation of sqrt(2*128*7/(pi e))
  EXPECT_NEAR(ntru_lattice_gh_closed_form(7, 128), std::sqrt(1792.0 / (std::numbers::pi * std::numbers::e)), 1e-12);
  EXPECT_NEAR(ntru_lattice_gh_closed_form(7, 128), 14.49, 0.005);
  EXPECT_NEAR(gaussian_heuristic(1, 2.0), std::sqrt(1 / (2 * std::numbers::pi * std::numbers::e)) * 2.0, 1e-15);
}

TEST(GaussianHeuristic, ConstantsForQEqualFourN) {
  for (int N : {10, 50, 101}) {
    const double c_full = ntru_lattice_gh_closed_form(N, 4 * N) / N;
    const double c_half = sublattice_gh_closed_form(N, 4 * N) / N;
    EXPECT_NEAR(std::round(c_full * 100) / 100, 0.97, 1e-12);
    EXPECT_NEAR(std::round(c_half * 100) / 100, 0.68, 1e-12);
  }
}

TEST(MatrixText, RoundTripAndBracketTolerance) {
  const IntMatrix m = IntMatrix::from_rows({{1, -2, 3}, {4, 5, -6}});
  std::ostringstream os;
  write_matrix(os, m);
  std::istringstream is(os.str());
  EXPECT_EQ(read_matrix(is), m);
  std::istringstream br("[[1 -2 3]\n[4 5 -6]]\n");
  EXPECT_EQ(read_matrix(br), m);
  std::istringstream bad("1 2 x\n");
  EXPECT_THROW(read_matrix(bad), IoError);
}
