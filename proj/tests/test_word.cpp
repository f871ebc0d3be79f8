#include <gtest/gtest.h>

#include <map>
#include <random>

#include "coxeter/brute_force.hpp"
#include "coxeter/catalog.hpp"
#include "coxeter/word.hpp"

using namespace coxeter;

namespace {

ReflectionRep rep_of(const std::string& name) { return ReflectionRep(io::named(name)); }

Word random_word(std::mt19937& rng, int rank, int len) {
  Word w(len);
  for (auto& x : w) x = static_cast<int>(rng() % rank);
  return w;
}

}  // namespace

TEST(BuildRep, Examples) {
  const ReflectionRep a1 = rep_of("A1");
  EXPECT_EQ(a1.reflection(0), Matrix::Constant(1, 1, -1.0));

  const ReflectionRep at1 = rep_of("A~1");
  Matrix s(2, 2), t(2, 2);
  s << -1, 2, 0, 1;
  t << 1, 0, 2, -1;
  EXPECT_EQ(at1.reflection(0), s);
  EXPECT_EQ(at1.reflection(1), t);
}

TEST(BuildRep, ReflectionsAreInvolutionsPreservingTheForm) {
  for (const auto& m : {io::named("H4"), io::named("E~8"), io::triangle(2, 3, 7), io::triangle(0, 0, 0)}) {
    const ReflectionRep rep(m);
    for (int s = 0; s < rep.rank(); ++s) {
      const Matrix& sig = rep.reflection(s);
      EXPECT_LT((sig * sig - Matrix::Identity(rep.rank(), rep.rank())).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT(rep.form_drift(sig), 1e-12);
      const Eigen::VectorXd image = sig.col(s);
      EXPECT_EQ(image[s], -1.0);
      for (int t = 0; t < rep.rank(); ++t) {
        if (t != s) {
          EXPECT_EQ(image[t], 0.0);
        }
      }
    }
  }
}

TEST(Length, Examples) {
  const ReflectionRep a2 = rep_of("A2");
  EXPECT_EQ(length({}, a2), 0);
  EXPECT_EQ(length({0, 1, 0}, a2), 3);
  EXPECT_EQ(length({0, 0}, a2), 0);
  EXPECT_EQ(length({0, 1, 0, 1}, a2), 2);  // (st)^2 = (ts)
}

TEST(Length, AgreesWithBruteForceOnA2) {
  const auto table = brute_force::oracle(io::named("A2"), 100);
  ASSERT_EQ(table.size(), 6u);
  const ReflectionRep a2 = rep_of("A2");
  for (const auto& w : table.elements) EXPECT_EQ(length(w, a2), static_cast<int>(w.size()));
}

TEST(NormalForm, Examples) {
  EXPECT_EQ(normal_form({1, 0, 1}, rep_of("A2")).normal_form, (Word{0, 1, 0}));
  EXPECT_EQ(normal_form({0, 1, 0, 1}, rep_of("B2")).normal_form, (Word{0, 1, 0, 1}));
  EXPECT_EQ(normal_form({0, 0, 1}, rep_of("A2")).normal_form, (Word{1}));
}

TEST(NormalForm, ExamplesMatchBruteForce) {
  // t s t in A2 is the longest element, whose least reduced word is s t s.
  EXPECT_EQ(brute_force::canonical({1, 0, 1}, io::named("A2")), (Word{0, 1, 0}));
  EXPECT_EQ(brute_force::canonical({0, 1, 0, 1}, io::named("B2")), (Word{0, 1, 0, 1}));
  EXPECT_EQ(brute_force::oracle(io::named("B2"), 100).size(), 8u);
}

TEST(NormalForm, RejectsOutOfRangeGenerators) {
  EXPECT_THROW(normal_form({0, 3}, rep_of("A2")), Error);
}

TEST(Equal, Examples) {
  EXPECT_TRUE(equal({0, 1, 0}, {1, 0, 1}, rep_of("A2")));
  EXPECT_TRUE(equal({0, 1}, {1, 0}, ReflectionRep(io::named("A1xA1"))));
  EXPECT_FALSE(equal({0, 1}, {1, 0}, rep_of("A~1")));
}

TEST(Ball, Examples) {
  EXPECT_EQ(ball(rep_of("A2"), 3).size(), 6u);
  EXPECT_EQ(ball(rep_of("A~1"), 4).size(), 9u);  // 1 + 2 + 2 + 2 + 2
  for (const auto& name : {"A1", "H3", "A~2"}) {
    const auto b = ball(rep_of(name), 0);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_TRUE(b.elements[0].normal_form.empty());
  }
  EXPECT_THROW(ball(rep_of("A2"), -1), Error);
}

TEST(Ball, ShortLexOrderAndLevels) {
  const auto b = ball(ReflectionRep(io::triangle(2, 3, 7)), 9);
  for (std::size_t i = 1; i < b.size(); ++i)
    EXPECT_TRUE(shortlex_less(b.elements[i - 1].normal_form, b.elements[i].normal_form));
  for (int r = 0; r <= 9; ++r)
    for (std::size_t i = b.level_start[r]; i < b.level_start[r + 1]; ++i)
      EXPECT_EQ(b.elements[i].length(), r);
}

TEST(Ball, SphereSizesMatchRewritingOracle) {
  for (const auto& m : {io::triangle(2, 3, 7), io::named("A~2"), io::triangle(0, 0, 0),
                        io::named("A1xA~1")}) {
    const auto b = ball(ReflectionRep(m), 8);
    const auto sizes = brute_force::sphere_sizes(m, 8);
    for (int r = 0; r <= 8; ++r)
      EXPECT_EQ(b.level_start[r + 1] - b.level_start[r], sizes[r]) << "radius " << r;
  }
}

TEST(Ball, SizesStrictlyIncreaseForTriangleGroups) {
  for (const auto& m : {io::triangle(2, 3, 7), io::triangle(2, 4, 5), io::triangle(3, 3, 4)}) {
    const auto b = ball(ReflectionRep(m), 15);
    for (int r = 0; r < 15; ++r) EXPECT_LT(b.size_within(r), b.size_within(r + 1));
  }
}

TEST(Ball, CoversFiniteGroups) {
  EXPECT_EQ(ball(rep_of("H3"), 15).size(), 120u);
  EXPECT_EQ(ball(rep_of("H3"), 30).size(), 120u);
  EXPECT_EQ(ball(rep_of("F4"), 24).size(), 1152u);
}

TEST(BruteForce, A2TableIsSymmetricGroup) {
  const auto table = brute_force::oracle(io::named("A2"), 100);
  ASSERT_EQ(table.size(), 6u);
  // s -> (0 1), t -> (1 2) acting on {0,1,2}; words act left to right.
  using Perm = std::array<int, 3>;
  auto compose = [](const Perm& a, const Perm& b) {  // first a then b
    Perm c{};
    for (int i = 0; i < 3; ++i) c[i] = b[a[i]];
    return c;
  };
  const std::array<Perm, 2> gens{Perm{1, 0, 2}, Perm{0, 2, 1}};
  std::vector<Perm> perms;
  for (const auto& w : table.elements) {
    Perm p{0, 1, 2};
    for (Generator s : w) p = compose(p, gens[s]);
    perms.push_back(p);
  }
  std::set<Perm> distinct(perms.begin(), perms.end());
  EXPECT_EQ(distinct.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(perms[table.product[i][j]], compose(perms[i], perms[j]));
}

TEST(BruteForce, Sizes) {
  EXPECT_EQ(brute_force::oracle(io::named("H3"), 1000).size(), 120u);
  try {
    brute_force::oracle(io::named("A~1"), 100);
    FAIL() << "expected TooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
}

TEST(InfiniteOrder, Examples) {
  const ReflectionRep a2 = rep_of("A2");
  const auto id = is_infinite_order(normal_form({}, a2), a2);
  ASSERT_TRUE(std::holds_alternative<FiniteOrder>(id));
  EXPECT_EQ(std::get<FiniteOrder>(id).order, 1);

  const auto st = is_infinite_order(normal_form({0, 1}, a2), a2);
  ASSERT_TRUE(std::holds_alternative<FiniteOrder>(st));
  EXPECT_EQ(std::get<FiniteOrder>(st).order, 3);

  // Translation of the infinite dihedral group: all eigenvalues are 1, so
  // there is no spectral certificate and no finite power.
  const ReflectionRep at1 = rep_of("A~1");
  EXPECT_TRUE(std::holds_alternative<UnknownOrder>(is_infinite_order(normal_form({0, 1}, at1), at1)));

  const ReflectionRep t237(io::triangle(2, 3, 7));
  const auto cox = is_infinite_order(normal_form({0, 1, 2}, t237), t237);
  ASSERT_TRUE(std::holds_alternative<InfiniteOrder>(cox));
  // numpy: spectral radius of s0 s1 s2 is 1.63557313
  EXPECT_NEAR(std::abs(std::get<InfiniteOrder>(cox).eigenvalue), 1.63557313, 1e-8);

  const auto rot = is_infinite_order(normal_form({1, 2}, t237), t237);
  ASSERT_TRUE(std::holds_alternative<FiniteOrder>(rot));
  EXPECT_EQ(std::get<FiniteOrder>(rot).order, 3);
}

TEST(InfiniteOrder, ParabolicsAreNotCertified) {
  // Unipotent elements: translations in A~2, the m = inf rotation in (2,4,inf).
  const ReflectionRep at2 = rep_of("A~2");
  for (const Word& w : {Word{0, 1, 0, 2}, Word{0, 1, 2, 1}}) {
    const auto g = normal_form(w, at2);
    EXPECT_FALSE(std::holds_alternative<FiniteOrder>(is_infinite_order(g, at2)));
  }
  const ReflectionRep t(io::triangle(2, 4, kInfinity));
  EXPECT_TRUE(std::holds_alternative<UnknownOrder>(is_infinite_order(normal_form({0, 2}, t), t)));
}

TEST(WordProperties, NormalFormIsIdempotentAndLengthIsLipschitz) {
  std::mt19937 rng(3);
  for (const auto& m : {io::triangle(2, 3, 7), io::named("B4"), io::named("A~3"), io::named("F4")}) {
    const ReflectionRep rep(m);
    for (int trial = 0; trial < 50; ++trial) {
      const Word a = random_word(rng, rep.rank(), 1 + static_cast<int>(rng() % 20));
      const Word b = random_word(rng, rep.rank(), 1 + static_cast<int>(rng() % 20));
      const Word nf = normal_form_word(a, rep);
      EXPECT_EQ(normal_form_word(nf, rep), nf);
      const int la = length(a, rep), lb = length(b, rep);
      EXPECT_LE(length(concat(a, b), rep), la + lb);
      for (Generator s = 0; s < rep.rank(); ++s)
        EXPECT_EQ(std::abs(length(concat(a, {s}), rep) - la), 1);
    }
  }
}

TEST(WordProperties, RepOfNormalFormMatchesRepOfWord) {
  std::mt19937 rng(4);
  const ReflectionRep rep(io::triangle(2, 3, 7));
  for (int trial = 0; trial < 40; ++trial) {
    const int len = 10 + static_cast<int>(rng() % 91);
    const Word w = random_word(rng, 3, len);
    const auto g = normal_form(w, rep);
    const double frob = (g.rep - rep.matrix_of(w)).norm();
    EXPECT_LE(frob, 1e-6 * (1.0 + len / 100.0)) << word_to_string(w);
  }
}

TEST(WordProperties, FiniteGroupsAgreeWithOracle) {
  for (const auto& name : {"A2", "B2", "A3", "B3", "H3", "A1xI2(5)"}) {
    const auto m = io::named(name);
    const ReflectionRep rep(m);
    const auto table = brute_force::oracle(m, 10000);
    const auto b = ball(rep, 64);
    ASSERT_EQ(b.size(), table.size()) << name;
    for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b.elements[i].normal_form, table.elements[i]);
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < b.size(); ++i) index[b.elements[i].normal_form] = i;
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        EXPECT_EQ(index.at(normal_form_word(concat(b.elements[i].normal_form, b.elements[j].normal_form), rep)),
                  static_cast<std::size_t>(table.product[i][j]));
  }
}

TEST(Renormalize, PullsPerturbedMatrixBackToTheGroup) {
  const ReflectionRep rep(io::triangle(2, 3, 7));
  Matrix m = rep.matrix_of({0, 1, 2, 0, 1});
  m(0, 0) += 1e-6;
  const double before = rep.form_drift(m);
  rep.renormalize(m);
  EXPECT_LT(rep.form_drift(m), before * 1e-3);
}
