#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

using namespace blockpos;

namespace {

const ComplexRational I = ComplexRational::i();

FamilyParams real_params(const Rational& a, const Rational& b, const Rational& c) { return {a, b, c}; }

ComplexRational random_complex(test::Rng& rng, long num, long den) {
  return {test::random_rational(rng, num, den), test::random_rational(rng, num, den)};
}

FamilyParams random_params(test::Rng& rng) {
  return {random_complex(rng, 3, 12), random_complex(rng, 3, 12), random_complex(rng, 3, 12)};
}

// a = r c with r real
FamilyParams random_case_b(test::Rng& rng) {
  const ComplexRational c = random_complex(rng, 6, 12);
  return {ComplexRational(test::random_rational(rng, 4, 3)) * c, random_complex(rng, 10, 12), c};
}

// |a| = |c| via a = c times a unit Pythagorean phase
FamilyParams random_case_a(test::Rng& rng) {
  static const ComplexRational phases[] = {
      {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {Rational(3, 5), Rational(4, 5)}, {Rational(-5, 13), Rational(12, 13)},
      {Rational(8, 17), Rational(-15, 17)}};
  const ComplexRational c = random_complex(rng, 6, 12);
  const auto& ph = phases[test::uniform_int(rng, 0, 6)];
  return {ph * c, random_complex(rng, 10, 12), c};
}

class ScopedThreads {
 public:
  explicit ScopedThreads(const char* n) {
    if (const char* old = std::getenv("BLOCKPOS_THREADS")) saved_ = old;
    setenv("BLOCKPOS_THREADS", n, 1);
  }
  ~ScopedThreads() {
    if (saved_.empty()) unsetenv("BLOCKPOS_THREADS");
    else setenv("BLOCKPOS_THREADS", saved_.c_str(), 1);
  }

 private:
  std::string saved_;
};

}  // namespace

TEST(FamilyOperators, Shapes) {
  const auto f = family_f({Rational(1, 3), Rational(1, 4), Rational(1, 5)});
  EXPECT_EQ(f.field(), Field::Real);
  EXPECT_EQ(f.entries()(0, 1), ComplexRational(Rational(1, 3)));
  EXPECT_EQ(f.entries()(2, 3), ComplexRational(Rational(1, 5)));
  EXPECT_EQ(family_f({I, 0, 0}).field(), Field::Complex);
  EXPECT_EQ(family_f_prime(1, 2, 3), family_e(1, 1, 3, 1));
}

TEST(Preconditions, Examples) {
  EXPECT_TRUE(family_case_a_applies({I / ComplexRational(4), 0, Rational(1, 4)}));
  EXPECT_FALSE(family_case_a_applies({Rational(1, 3), 0, Rational(1, 4)}));
  EXPECT_TRUE(family_case_b_applies({Rational(1, 2), I, 0}));
  EXPECT_TRUE(family_case_b_applies({I / ComplexRational(2), 0, I}));
  EXPECT_FALSE(family_case_b_applies({I, 0, 1}));
  EXPECT_THROW(bp_family_case_a({Rational(1, 3), 0, Rational(1, 4)}), std::invalid_argument);
  EXPECT_THROW(bp_family_case_b({I, 0, 1}), std::invalid_argument);
}

TEST(CaseA, Examples) {
  // |b|^2 = 1/20
  const ComplexRational b(Rational(1, 5), Rational(1, 10));
  EXPECT_TRUE(bp_family_case_a({I / ComplexRational(4), b, Rational(1, 4)}));
  EXPECT_TRUE(bp_family_case_a(real_params(Rational(1, 4), Rational(1, 2), Rational(1, 4))));
  EXPECT_FALSE(bp_family_case_a(real_params(Rational(1, 4), Rational(51, 100), Rational(1, 4))));
  EXPECT_TRUE(bp_family_case_a(real_params(Rational(1, 2), 0, Rational(1, 2))));
  EXPECT_FALSE(bp_family_case_a(real_params(Rational(1, 2), Rational(1, 100), Rational(1, 2))));
}

TEST(CaseB, Examples) {
  EXPECT_TRUE(bp_family_case_b(real_params(0, 1, 0)));
  EXPECT_FALSE(bp_family_case_b(real_params(0, Rational(101, 100), 0)));
  EXPECT_TRUE(bp_family_case_b(real_params(Rational(1, 2), 0, Rational(1, 2))));
  EXPECT_TRUE(bp_family_case_b(real_params(Rational(1, 10), Rational(4, 5), Rational(1, 10))));
  EXPECT_TRUE(bp_family_case_b(real_params(Rational(3, 10), Rational(1, 2), Rational(-1, 10))));
}

TEST(General, Examples) {
  EXPECT_TRUE(bp_family_general(real_params(0, 0, 0)));
  EXPECT_TRUE(bp_family_general(real_params(0, 1, 0)));
  EXPECT_FALSE(bp_family_general(real_params(0, Rational(9, 8), 0)));
  EXPECT_TRUE(bp_family_general({I / ComplexRational(4), ComplexRational(Rational(1, 5), Rational(1, 10)), Rational(1, 4)}));
  EXPECT_FALSE(bp_family_general(real_params(1, 0, 0)));
  EXPECT_TRUE(bp_family_general(real_params(Rational(1, 2), 0, 0)));
}

TEST(Psd, Examples) {
  EXPECT_TRUE(psd_family(real_params(Rational(1, 2), 0, 0)));
  EXPECT_FALSE(psd_family(real_params(Rational(3, 4), 0, 0)));
  EXPECT_TRUE(psd_family(real_params(0, Rational(1, 2), 0)));
  EXPECT_FALSE(psd_family(real_params(0, Rational(51, 100), 0)));
}

TEST(Psd, MatchesOperatorPsd) {
  test::Rng rng(51);
  for (int k = 0; k < 300; ++k) {
    const auto p = random_params(rng);
    EXPECT_EQ(psd_family(p), is_psd(family_f(p)));
  }
}

TEST(General, SpecializesToClosedCases) {
  test::Rng rng(52);
  for (int k = 0; k < 200; ++k) {
    const auto pa = random_case_a(rng);
    ASSERT_TRUE(family_case_a_applies(pa));
    EXPECT_EQ(bp_family_general(pa), bp_family_case_a(pa));
    const auto pb = random_case_b(rng);
    ASSERT_TRUE(family_case_b_applies(pb));
    EXPECT_EQ(bp_family_general(pb), bp_family_case_b(pb));
  }
}

TEST(General, AgreesWithPhiOracle) {
  test::Rng rng(53);
  int checked = 0, positives = 0;
  while (checked < 500) {
    const auto p = random_params(rng);
    const double m = test::phi_grid_min(p);
    if (std::abs(m) <= 1e-4) continue;
    ASSERT_EQ(bp_family_general(p), m >= -1e-6) << p.a << ' ' << p.b << ' ' << p.c;
    positives += m > 0;
    ++checked;
  }
  EXPECT_GT(positives, 50);
  EXPECT_LT(positives, 450);
}

TEST(General, ClosedCasesAgreeWithPhiOracle) {
  test::Rng rng(54);
  for (int k = 0; k < 500; ++k) {
    const auto pa = random_case_a(rng);
    const double ma = test::phi_grid_min(pa);
    if (std::abs(ma) > 1e-4) {
      EXPECT_EQ(bp_family_case_a(pa), ma > 0);
    }
    const auto pb = random_case_b(rng);
    const double mb = test::phi_grid_min(pb);
    if (std::abs(mb) > 1e-4) {
      EXPECT_EQ(bp_family_case_b(pb), mb > 0);
    }
  }
}

TEST(Real, MatchesRealDecider) {
  test::Rng rng(55);
  for (int k = 0; k < 500; ++k) {
    const auto p = real_params(test::random_on_grid(rng, -20, 20, 20), test::random_on_grid(rng, -20, 20, 20),
                               test::random_on_grid(rng, -20, 20, 20));
    EXPECT_EQ(bp_family_real(p), bp_real_2x2(family_f(p)).holds);
  }
  EXPECT_THROW(bp_family_real({I, 0, 0}), std::invalid_argument);
}

// For the PT-symmetrized family block positivity and positivity coincide.
TEST(FPrime, BlockPositiveIffPsd) {
  test::Rng rng(56);
  for (int k = 0; k < 500; ++k) {
    const auto op = family_f_prime(test::random_on_grid(rng, -20, 20, 20), test::random_on_grid(rng, -40, 40, 20),
                                   test::random_on_grid(rng, -20, 20, 20));
    const bool bp = bp_real_2x2(op).holds;
    EXPECT_EQ(bp, is_psd(op));
    if (bp) {
      const auto cert = decompose_pt_symmetric(op);
      ASSERT_TRUE(cert.has_value());
      EXPECT_EQ(sos_reconstruct(*cert), op);
    }
  }
}

TEST(Containment, PsdImpliesBlockPositive) {
  test::Rng rng(57);
  int psd = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto p = random_params(rng);
    if (!psd_family(p)) continue;
    ++psd;
    EXPECT_TRUE(bp_family_general(p));
  }
  EXPECT_GT(psd, 20);
}

// The four-inequality test for the general case is neither necessary
// nor sufficient.
TEST(FourInequalityTest, Counterexamples) {
  const auto bp_not_accepted = real_params(Rational(1, 4), 0, Rational(-1, 4));
  EXPECT_TRUE(bp_family_general(bp_not_accepted));
  EXPECT_GT(test::phi_grid_min(bp_not_accepted), -1e-12);
  EXPECT_FALSE(four_inequality_test(bp_not_accepted).ii);

  const auto accepted_not_bp = real_params(0, Rational(9, 8), 0);
  EXPECT_TRUE(four_inequality_test(accepted_not_bp).all());
  EXPECT_FALSE(bp_family_general(accepted_not_bp));
  EXPECT_LT(test::phi_grid_min(accepted_not_bp), 0);
}

TEST(CaseAShortcut, HasFalsePositives) {
  test::Rng rng(58);
  int false_positive = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto p = random_case_a(rng);
    if (case_a_shortcut(p) && !bp_family_case_a(p) && test::phi_grid_min(p) < -1e-4) ++false_positive;
  }
  EXPECT_GT(false_positive, 0);
}

TEST(RegionScan, SliceTransitions) {
  GridSpec g;
  g.a = {0, 0};
  g.c = {0, 0};
  g.b = {0, Rational(3, 2)};
  g.step = Rational(1, 100);
  const auto pts = region_scan(g);
  ASSERT_EQ(pts.size(), 151u);
  for (const auto& p : pts) {
    EXPECT_EQ(p.psd, p.params.b.re <= Rational(1, 2));
    EXPECT_EQ(p.block_positive, p.params.b.re <= Rational(1));
  }
}

TEST(RegionScan, Errors) {
  GridSpec g;
  g.a = {1, 0};
  EXPECT_THROW(region_scan(g), std::invalid_argument);
  GridSpec h;
  h.step = 0;
  EXPECT_THROW(region_scan(h), std::invalid_argument);
}

TEST(RegionScan, OrderAndCsv) {
  GridSpec g;
  g.a = {0, Rational(1, 2)};
  g.b = {Rational(-1, 2), 0};
  g.c = {0, Rational(1, 2)};
  g.step = Rational(1, 2);
  const auto pts = region_scan(g);
  ASSERT_EQ(pts.size(), 8u);
  std::ostringstream os;
  write_region_csv(os, pts);
  const std::string csv = os.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "a,b,c,psd,block_positive");
  EXPECT_NE(csv.find("\n0/1,-1/2,0/1,"), std::string::npos);
  EXPECT_EQ(pts[1].params.c.re, Rational(1, 2));
  EXPECT_EQ(pts[2].params.a.re, Rational(1, 2));
  EXPECT_EQ(pts[4].params.b.re, Rational(0));
}

TEST(RegionScan, DeterministicAcrossThreadCounts) {
  GridSpec g;
  g.step = Rational(1, 5);
  std::string one, many;
  {
    ScopedThreads t("1");
    std::ostringstream os;
    write_region_csv(os, region_scan(g));
    one = os.str();
  }
  {
    ScopedThreads t("7");
    std::ostringstream os;
    write_region_csv(os, region_scan(g));
    many = os.str();
  }
  EXPECT_EQ(one, many);
  const auto s = summarize(region_scan(g));
  EXPECT_EQ(s.violations, 0u);
  EXPECT_GT(s.bp_only, 0u);
}
