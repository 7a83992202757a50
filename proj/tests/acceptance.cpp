// Acceptance gate: twelve pinned criteria, one pass/fail line each. The
// binary exits with the number of failed criteria, so a clean run is exit 0.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tritherm/classify.hpp"
#include "tritherm/construct.hpp"
#include "tritherm/convergents.hpp"
#include "tritherm/errors.hpp"
#include "tritherm/io.hpp"
#include "tritherm/linalg.hpp"
#include "tritherm/partition.hpp"
#include "tritherm/trimap.hpp"

using namespace tritherm;

namespace {

using Gen = std::mt19937_64;

[[noreturn]] void fail(const std::string& msg) { throw Error(msg); }

long draw(Gen& g, long lo, long hi) {
  return lo + static_cast<long>(g() % static_cast<unsigned long>(hi - lo + 1));
}

RationalPair random_pair(Gen& g) {
  long q = draw(g, 29, 99991);
  long a = draw(g, 1, q);
  long b = draw(g, 1, a);
  Rat alpha(a, q);
  alpha.canonicalize();
  Rat beta(b, q);
  beta.canonicalize();
  return {alpha, beta};
}

std::string pair_text(const RationalPair& p) {
  return "(" + p.alpha.get_str() + ", " + p.beta.get_str() + ")";
}

std::vector<Rat> closed_form_denominators(const RationalPair& p, long n) {
  if (n == 1) return {p.beta, 1 - p.alpha};
  return {p.beta, 1 - p.alpha - p.beta, 1 - p.alpha, p.alpha - p.beta};
}

// 1. Z_1 and Z_2 against their closed forms: bitwise through the shared term
// chain, and within 2^-200 relative of an independent 512-bit reverse-order
// evaluation.
void criterion_closed_forms() {
  Gen g(101);
  for (int t = 0; t < 100; ++t) {
    RationalPair p = random_pair(g);
    Rat s = (t % 2 == 0) ? Rat(3) : Rat(7, 2);
    for (long n = 1; n <= 2; ++n) {
      std::vector<Rat> dens = closed_form_denominators(p, n);
      Real acc(256);
      long zeros = 0;
      for (const Rat& den : dens) {
        if (sgn_of(den) == Sgn::Zero) {
          ++zeros;
          continue;
        }
        Real term = term_value(den, s, 256);
        mpfr_add(acc.raw(), acc.raw(), term.raw(), MPFR_RNDN);
      }
      PartitionResult r = z_value(PairRepr::from_rational(p.alpha, p.beta), n, s, 256);
      if (!mpfr_equal_p(acc.raw(), r.value.raw()))
        fail("closed form differs bitwise at N=" + std::to_string(n) + " for " +
             pair_text(p));
      if (r.pole_count != zeros) fail("pole count mismatch for " + pair_text(p));
      Real ref(512);
      for (auto it = dens.rbegin(); it != dens.rend(); ++it) {
        if (sgn_of(*it) == Sgn::Zero) continue;
        Real term = term_value(*it, s, 512);
        mpfr_add(ref.raw(), ref.raw(), term.raw(), MPFR_RNDN);
      }
      if (mpfr_zero_p(ref.raw())) continue;
      Real diff(512);
      mpfr_sub(diff.raw(), ref.raw(), r.value.raw(), MPFR_RNDN);
      mpfr_abs(diff.raw(), diff.raw(), MPFR_RNDN);
      Real tol(512);
      mpfr_mul_2si(tol.raw(), ref.raw(), -200, MPFR_RNDN);
      if (mpfr_cmp(diff.raw(), tol.raw()) > 0)
        fail("relative error above 2^-200 at N=" + std::to_string(n) + " for " +
             pair_text(p));
    }
  }
}

// 2. Engine versus the naive matrix-product oracle up to N=10 with the same
// block grouping, so every field agrees bitwise.
void criterion_matrix_oracle() {
  Gen g(202);
  for (int t = 0; t < 25; ++t) {
    RationalPair p = random_pair(g);
    long N = 7 + (t % 4);
    Rat s(2 + (t % 3));
    long b = partition_block_bits(N);
    Real acc(256);
    long zeros = 0;
    std::string first_zero;
    std::optional<Rat> min_abs;
    for (unsigned long block = 0; block < (1ul << b); ++block) {
      Real partial(256);
      for (unsigned long suffix = 0; suffix < (1ul << (N - b)); ++suffix) {
        unsigned long i = (block << (N - b)) | suffix;
        std::vector<int> word(static_cast<size_t>(N));
        std::string text;
        for (long j = 1; j <= N; ++j) {
          int sigma = 1 - static_cast<int>((i >> (N - j)) & 1ul);
          word[static_cast<size_t>(j - 1)] = sigma;
          text.push_back(static_cast<char>('0' + sigma));
        }
        Rat den = hs_product(p.alpha, p.beta, word_product(word));
        if (sgn_of(den) == Sgn::Zero) {
          ++zeros;
          if (first_zero.empty()) first_zero = text;
          continue;
        }
        Rat a = abs(den);
        if (!min_abs || a < *min_abs) min_abs = a;
        Real term = term_value(den, s, 256);
        mpfr_add(partial.raw(), partial.raw(), term.raw(), MPFR_RNDN);
      }
      mpfr_add(acc.raw(), acc.raw(), partial.raw(), MPFR_RNDN);
    }
    PartitionResult r = z_value(PairRepr::from_rational(p.alpha, p.beta), N, s, 256);
    if (!mpfr_equal_p(acc.raw(), r.value.raw()))
      fail("oracle value differs at N=" + std::to_string(N) + " for " + pair_text(p));
    if (r.pole_count != zeros || r.pole_word != first_zero)
      fail("oracle pole record differs for " + pair_text(p));
    if (zeros == 0) {
      Real want = Real::of(*min_abs, 256, MPFR_RNDD);
      if (!mpfr_equal_p(want.raw(), r.min_denom.raw()))
        fail("oracle min_denom differs for " + pair_text(p));
    }
  }
}

// 3. Orbit digits equal d-recurrence digits, 200 pairs, depth 15.
void criterion_digit_extraction() {
  Gen g(303);
  for (int t = 0; t < 200; ++t) {
    RationalPair p = random_pair(g);
    PairRepr repr = PairRepr::from_rational(p.alpha, p.beta);
    if (!(triangle_sequence(repr, 15) == digits_from_d(repr, 15)))
      fail("extraction paths disagree for " + pair_text(p));
  }
}

// 4. Thirty certified zero digits of the cubic point at 512 bits, under 5s.
void criterion_cubic_digits() {
  auto start = std::chrono::steady_clock::now();
  DigitSequence ds = triangle_sequence(cubic_fixed_point(512), 30);
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  if (ds.terminated || ds.size() != 30) fail("expected thirty certified digits");
  for (long i = 0; i < 30; ++i)
    if (ds[i] != 0) fail("nonzero digit at index " + std::to_string(i));
  if (elapsed.count() >= 5.0)
    fail("took " + std::to_string(elapsed.count()) + "s, budget is 5s");
}

// 5. The approximation bound |d_k| <= 1/|x_{k+1}| on 100 constructed pairs
// with k up to 20.
void criterion_lemma() {
  Gen g(505);
  for (int t = 0; t < 100; ++t) {
    DigitSequence ds;
    for (int i = 0; i < 22; ++i) ds.digits.emplace_back(draw(g, 0, 3));
    Enclosure e = pair_from_digits(ds);
    PairRepr pair = PairRepr::from_rational(e.representative.u, e.representative.v);
    long k = draw(g, 0, 20);
    LemmaBound b = lemma_bound(pair, ds, k, 256);
    if (!b.holds) fail("bound fails at k=" + std::to_string(k));
  }
}

// 6. Word-column identity over every digit list in {0..4}^5.
void criterion_word_columns() {
  DigitSequence ds = make_digits({0, 0, 0, 0, 0});
  for (long code = 0; code < 3125; ++code) {
    long c = code;
    for (int i = 0; i < 5; ++i) {
      ds.digits[static_cast<size_t>(i)] = c % 5;
      c /= 5;
    }
    std::string diag;
    if (!word_column_identity(ds, &diag)) fail(diag);
  }
}

// 7. Every one of 1000 random pairs lies inside its own digit-prefix
// triangle.
void criterion_membership() {
  Gen g(707);
  long checked = 0;
  for (int t = 0; t < 1000; ++t) {
    RationalPair p = random_pair(g);
    DigitSequence ds =
        triangle_sequence(PairRepr::from_rational(p.alpha, p.beta), 6);
    Enclosure e = pair_from_digits(ds.prefix(ds.size() < 6 ? ds.size() : 6));
    if (!triangle_contains(e.vertices, {p.alpha, p.beta}))
      fail("pair escaped its enclosure: " + pair_text(p));
    ++checked;
  }
  if (checked != 1000) fail("expected 1000 membership checks");
}

// 8. Every generator word product has determinant 1 (length <= 12) and
// entries bounded by F_{N+1} (length <= 14).
void criterion_word_products() {
  std::vector<Int> fib(16);
  fib[1] = 1;
  for (int i = 2; i <= 15; ++i) fib[i] = fib[i - 1] + fib[i - 2];
  std::function<void(const IntMat3&, int)> walk = [&](const IntMat3& m, int depth) {
    if (depth <= 12 && m.det() != 1)
      fail("determinant " + m.det().get_str() + " at depth " + std::to_string(depth));
    const Int& bound = fib[static_cast<size_t>(depth + 1)];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Int a = m.m[i][j] < 0 ? Int(-m.m[i][j]) : m.m[i][j];
        if (a > bound)
          fail("entry " + m.m[i][j].get_str() + " exceeds F_" +
               std::to_string(depth + 1));
      }
    if (depth == 14) return;
    walk(m * generator(1), depth + 1);
    walk(m * generator(0), depth + 1);
  };
  walk(IntMat3::identity(), 0);
}

// 9. The vanishing-limit experiment on the cubic pair, N=10..22, d=2,
// B_max=50: pointwise Fibonacci ceiling, certified decreasing tail, final
// normalized value below 1/20, all inside the ten-minute budget.
void criterion_vanishing_trend() {
  auto start = std::chrono::steady_clock::now();
  Theorem2Report rep = theorem2_experiment(cubic_fixed_point(256), Rat(3), Rat(2), 10,
                                           22, Rat(2), 50, 256);
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  if (rep.exploratory) fail("s=3, k=2 should not be exploratory");
  if (rep.trace.entries.size() != 13) fail("expected 13 trace rows");
  if (!rep.pointwise_ok) fail("a Z_N exceeded its Fibonacci ceiling");
  if (!rep.tail_decreasing) fail("tail is not certified decreasing");
  if (!rep.final_below) fail("final normalized value not certified below 1/20");
  if (elapsed.count() >= 600.0)
    fail("took " + std::to_string(elapsed.count()) + "s, budget is 600s");
}

// 10. The divergence witness chain at levels m=1 and m=2, plus the
// distinguished-term-versus-full-sum comparison at N_1 = 4.
void criterion_divergence_witness() {
  Theorem1Config cfg;
  DivergenceReport rep = theorem1_witness(cfg, Rat(1), 256);
  if (!rep.verdict) fail("witness verdict is false");
  if (rep.levels.size() != 2) fail("expected two certified levels");
  const Theorem1Level& l1 = rep.levels[0];
  if (l1.a_next != "2981" || l1.N_m != 4 || !l1.x_gt_a || !l1.a_gt_exp ||
      !l1.lower_gt_threshold)
    fail("level 1 chain broken");
  const Theorem1Level& l2 = rep.levels[1];
  if (l2.a_bits != 12924 || l2.N_m != 2986 || !l2.x_gt_a || !l2.a_gt_exp ||
      !l2.lower_gt_threshold)
    fail("level 2 chain broken");
  if (!rep.term_vs_sum_checked || !rep.term_vs_sum_ok)
    fail("distinguished term was not dominated by the full sum");
  if (rep.distinguished.cmp(rep.z_at_n1) >= 0) fail("term/sum ordering violated");
}

// 11. Identical bits from 1, 2, and 8 workers, in both evaluation modes.
void criterion_worker_invariance() {
  PairRepr exact = PairRepr::from_rational(Rat(3, 7), Rat(2, 9));
  PartitionResult e1 = z_value(exact, 12, Rat(3), 256, 1);
  for (unsigned t : {2u, 8u}) {
    PartitionResult r = z_value(exact, 12, Rat(3), 256, t);
    if (!mpfr_equal_p(e1.value.raw(), r.value.raw()) ||
        !mpfr_equal_p(e1.min_denom.raw(), r.min_denom.raw()))
      fail("exact mode changed with " + std::to_string(t) + " workers");
  }
  PairRepr enc = cubic_fixed_point(256);
  PartitionResult c1 = z_value(enc, 12, Rat(3), 256, 1);
  for (unsigned t : {2u, 8u}) {
    PartitionResult r = z_value(enc, 12, Rat(3), 256, t);
    if (!r.value_enc || !c1.value_enc ||
        !mpfr_equal_p(c1.value_enc->lo().raw(), r.value_enc->lo().raw()) ||
        !mpfr_equal_p(c1.value_enc->hi().raw(), r.value_enc->hi().raw()))
      fail("enclosure mode changed with " + std::to_string(t) + " workers");
  }
}

// 12. The two pinned degenerate outcomes: the (1/2, 1/2) pole at word 10,
// and ExactZero with a reduced, canonical witness for (1/2, 1/3).
void criterion_degenerate_witnesses() {
  PartitionResult r =
      z_value(PairRepr::from_rational(Rat(1, 2), Rat(1, 2)), 2, Rat(2), 256);
  if (!r.pole || r.pole_word != "10" || r.pole_count != 2)
    fail("pole record wrong for (1/2, 1/2)");
  if (mpfr_cmp_ui(r.value.raw(), 8) != 0) fail("surviving sum is not 8");
  bool threw = false;
  try {
    diophantine_check(PairRepr::from_rational(Rat(1, 2), Rat(1, 3)), Rat(2), 50, 256);
  } catch (const ExactZero& e) {
    threw = true;
    std::string cleaned;
    for (char c : e.witness())
      cleaned.push_back((c == '(' || c == ')' || c == ',') ? ' ' : c);
    long p = 0, q = 0, rr = 0;
    std::istringstream in(cleaned);
    if (!(in >> p >> q >> rr)) fail("unparseable witness " + e.witness());
    Rat dependence = Rat(p) + Rat(q, 2) + Rat(rr, 3);
    dependence.canonicalize();
    if (dependence != 0) fail("witness is not a dependence: " + e.witness());
    if (q == 0 && rr == 0) fail("trivial witness");
    Int g = gcd(gcd(Int(std::labs(p)), Int(std::labs(q))), Int(std::labs(rr)));
    if (g != 1) fail("witness not reduced: " + e.witness());
    long lead = p != 0 ? p : (q != 0 ? q : rr);
    if (lead <= 0) fail("witness not canonical: " + e.witness());
    if (p < 0 || p > 50 || std::labs(q) > 50 || std::labs(rr) > 50)
      fail("witness outside the box: " + e.witness());
  }
  if (!threw) fail("expected ExactZero for (1/2, 1/3)");
  // below the dependence scale the fit must succeed
  DiophantineFit fit =
      diophantine_check(PairRepr::from_rational(Rat(1, 2), Rat(1, 3)), Rat(2), 1, 256);
  if (mpfr_sgn(fit.C.raw()) <= 0) fail("fit constant must be positive");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void()> run;
  };
  const std::vector<Criterion> criteria = {
      {"closed-form-agreement", criterion_closed_forms},
      {"matrix-product-oracle", criterion_matrix_oracle},
      {"digit-extraction-two-paths", criterion_digit_extraction},
      {"cubic-thirty-digits", criterion_cubic_digits},
      {"approximation-bound", criterion_lemma},
      {"word-column-identity-exhaustive", criterion_word_columns},
      {"nested-membership", criterion_membership},
      {"word-products-unimodular-bounded", criterion_word_products},
      {"vanishing-trend", criterion_vanishing_trend},
      {"divergence-witness", criterion_divergence_witness},
      {"worker-invariance", criterion_worker_invariance},
      {"degenerate-witnesses", criterion_degenerate_witnesses},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    std::string message;
    bool ok = true;
    try {
      criteria[i].run();
    } catch (const std::exception& e) {
      ok = false;
      message = e.what();
    }
    auto secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%2zu/12] %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name, secs, ok ? "" : ": ", message.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  std::printf("%d/12 criteria passed\n", 12 - failures);
  return failures;
}
