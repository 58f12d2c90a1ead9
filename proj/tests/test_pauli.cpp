#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "qpac/errors.hpp"
#include "qpac/pauli.hpp"
#include "qpac/qstate.hpp"

using namespace qpac;

namespace {

std::vector<std::string> strs(const std::vector<PauliString>& v) {
  std::vector<std::string> out;
  for (const auto& p : v) out.push_back(p.str());
  return out;
}

std::vector<std::string> strs(const StabilizerGroup& g) { return strs(g.elements()); }

}  // namespace

TEST(PauliString, ParseAndPrint) {
  EXPECT_EQ(PauliString::parse("+ZIZ").str(), "+ZIZ");
  EXPECT_EQ(PauliString::parse("-YY").str(), "-YY");
  EXPECT_EQ(PauliString::parse("XX").str(), "+XX");
  EXPECT_EQ(PauliString::parse("-YY").sign(), -1);
  EXPECT_EQ(PauliString::parse("IYZY").y_count(), 2u);
  EXPECT_TRUE(PauliString::parse("-II").is_identity());
  EXPECT_FALSE(PauliString::parse("XZ").has_y());
  EXPECT_THROW(PauliString::parse(""), std::invalid_argument);
  EXPECT_THROW(PauliString::parse("+XQ"), std::invalid_argument);
  EXPECT_THROW(PauliString::parse("+"), std::invalid_argument);
  EXPECT_THROW(PauliString(std::vector<Pauli>{Pauli::X}, 2), std::invalid_argument);
}

TEST(PauliString, Masks) {
  const auto p = PauliString::parse("XYZI");
  // factor 0 is the most significant bit
  EXPECT_EQ(p.x_mask(), 0b1100u);
  EXPECT_EQ(p.z_mask(), 0b0110u);
}

TEST(PauliString, Ordering) {
  std::vector<PauliString> v{PauliString::parse("ZZ"), PauliString::parse("XX"),
                             PauliString::parse("-YY"), PauliString::parse("II"),
                             PauliString::parse("+YY")};
  std::sort(v.begin(), v.end());
  EXPECT_EQ(strs(v), (std::vector<std::string>{"+II", "+XX", "-YY", "+YY", "+ZZ"}));
}

TEST(PauliMultiply, GhzPairGivesMinusYY) {
  EXPECT_EQ(pauli_multiply(PauliString::parse("XX"), PauliString::parse("ZZ")).str(), "-YY");
  EXPECT_EQ(pauli_multiply(PauliString::parse("ZZ"), PauliString::parse("XX")).str(), "-YY");
  EXPECT_EQ(pauli_multiply(PauliString::parse("-YY"), PauliString::parse("-YY")).str(), "+II");
}

TEST(PauliMultiply, ImaginaryPhaseRejected) {
  EXPECT_THROW(pauli_multiply(PauliString::parse("X"), PauliString::parse("Z")), PhysicalityError);
  EXPECT_THROW(pauli_multiply(PauliString::parse("XI"), PauliString::parse("YY")),
               PhysicalityError);
  EXPECT_THROW(pauli_multiply(PauliString::parse("XX"), PauliString::parse("XXX")),
               std::invalid_argument);
}

// Every ordered pair of strings up to 3 qubits, checked against dense
// Kronecker products.
TEST(PauliMultiply, MatchesDenseProductsExhaustively) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto all = oracle::all_strings(n);
    for (const auto& a : all) {
      for (const auto& b : all) {
        for (int sa : {1, -1}) {
          const auto pa = PauliString::parse((sa < 0 ? "-" : "+") + a);
          const auto pb = PauliString::parse("+" + b);
          const Matrix prod = oracle::dense(pa) * oracle::dense(pb);
          try {
            const auto r = pauli_multiply(pa, pb);
            EXPECT_LT((oracle::dense(r) - prod).cwiseAbs().maxCoeff(), 1e-12)
                << pa.str() << " * " << pb.str();
          } catch (const PhysicalityError&) {
            // the dense product must then be +-i times a Pauli string
            bool found = false;
            for (const auto& c : all) {
              const Matrix m = oracle::dense("+" + c);
              for (Complex ph : {Complex(0, 1), Complex(0, -1)})
                found = found || (ph * m - prod).cwiseAbs().maxCoeff() < 1e-12;
            }
            EXPECT_TRUE(found) << pa.str() << " * " << pb.str();
          }
        }
      }
    }
  }
}

TEST(PauliString, CommutationMatchesDense) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto all = oracle::all_strings(n);
    for (const auto& a : all) {
      for (const auto& b : all) {
        const Matrix da = oracle::dense(a), db = oracle::dense(b);
        const bool dense_commute = (da * db - db * da).cwiseAbs().maxCoeff() < 1e-12;
        EXPECT_EQ(PauliString::parse(a).commutes_with(PauliString::parse(b)), dense_commute);
      }
    }
  }
}

TEST(PauliString, SignedPermutationMatchesDense) {
  for (const auto& s : oracle::all_strings(3)) {
    EXPECT_LT((to_dense(PauliString::parse("-" + s)) - oracle::dense("-" + s)).cwiseAbs().maxCoeff(),
              1e-15)
        << s;
  }
}

TEST(GhzGenerators, Shape) {
  EXPECT_EQ(strs(ghz_generators(2)), (std::vector<std::string>{"+XX", "+ZZ"}));
  EXPECT_EQ(strs(ghz_generators(4)),
            (std::vector<std::string>{"+XXXX", "+ZZII", "+IZZI", "+IIZZ"}));
  EXPECT_THROW(ghz_generators(1), std::invalid_argument);
  EXPECT_THROW(ghz_generators(0), std::invalid_argument);
}

TEST(GroupClosure, TwoQubitGhz) {
  const auto g = group_closure(ghz_generators(2));
  EXPECT_EQ(strs(g), (std::vector<std::string>{"+II", "+XX", "-YY", "+ZZ"}));
  EXPECT_TRUE(g.contains(PauliString::parse("-YY")));
  EXPECT_FALSE(g.contains(PauliString::parse("+YY")));
}

TEST(GroupClosure, ThreeQubitGhz) {
  const auto g = group_closure(ghz_generators(3));
  EXPECT_EQ(strs(g), (std::vector<std::string>{"+III", "+IZZ", "+XXX", "-XYY", "-YXY", "-YYX",
                                               "+ZIZ", "+ZZI"}));
  EXPECT_EQ(strs(xz_subset(g)), (std::vector<std::string>{"+IZZ", "+XXX", "+ZIZ", "+ZZI"}));
}

TEST(GroupClosure, SizesAndClosure) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto g = group_closure(ghz_generators(n));
    ASSERT_EQ(g.size(), std::size_t{1} << n);
    EXPECT_TRUE(g.elements().front().is_identity());
    EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
    EXPECT_EQ(xz_subset(g).size(), std::size_t{1} << (n - 1)) << n;
    if (n <= 5) {
      for (const auto& a : g)
        for (const auto& b : g) EXPECT_TRUE(g.contains(pauli_multiply(a, b)));
    }
    std::set<std::vector<Pauli>> distinct;
    for (const auto& p : g) distinct.insert({p.factors().begin(), p.factors().end()});
    EXPECT_EQ(distinct.size(), g.size());
  }
}

TEST(GroupClosure, EveryElementStabilizesGhz) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const Vector psi = ghz_vector(n);
    for (const auto& p : group_closure(ghz_generators(n))) {
      EXPECT_LT((oracle::dense(p) * psi - psi).norm(), 1e-12) << p.str();
    }
  }
}

TEST(GroupClosure, RejectsBadGenerators) {
  const std::vector<PauliString> anti{PauliString::parse("XX"), PauliString::parse("ZI")};
  EXPECT_THROW(group_closure(anti), StructureError);
  const std::vector<PauliString> dep{PauliString::parse("XX"), PauliString::parse("ZZ"),
                                     PauliString::parse("-YY")};
  EXPECT_THROW(group_closure(dep), StructureError);
  const std::vector<PauliString> twice{PauliString::parse("ZZ"), PauliString::parse("ZZ")};
  EXPECT_THROW(group_closure(twice), StructureError);
  const std::vector<PauliString> minus_id{PauliString::parse("-II")};
  EXPECT_THROW(group_closure(minus_id), StructureError);
  const std::vector<PauliString> mixed{PauliString::parse("XX"), PauliString::parse("ZZZ")};
  EXPECT_THROW(group_closure(mixed), StructureError);
  EXPECT_THROW(group_closure(std::span<const PauliString>{}), StructureError);
}

TEST(GroupClosure, PartialGroup) {
  const std::vector<PauliString> one{PauliString::parse("ZZ")};
  EXPECT_EQ(strs(group_closure(one)), (std::vector<std::string>{"+II", "+ZZ"}));
}
