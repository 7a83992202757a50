#include "tritherm/partition.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "tritherm/convergents.hpp"
#include "tritherm/parallel.hpp"

namespace tritherm {

long partition_block_bits(long N) {
  long b = N - 6;
  if (b < 0) b = 0;
  if (b > 8) b = 8;
  return b;
}

namespace {

// How a single term 1/|den|^s is evaluated in scalar mode. The operation
// sequence is fixed: exact |den|, one RNDN rounding into the working
// precision, power, reciprocal. Everything that wants scalar terms goes
// through this, so equal exact denominators give bitwise-equal terms.
struct ScalarPlan {
  mpfr_prec_t prec;
  bool s_is_uint = false;
  unsigned long s_ui = 0;
  Real s_val;

  ScalarPlan(const Rat& s, mpfr_prec_t prec_in)
      : prec(prec_in), s_val(Real::of(s, prec_in, MPFR_RNDN)) {
    if (s.get_den() == 1 && sgn_of(s) == Sgn::Pos && s.get_num().fits_ulong_p()) {
      s_is_uint = true;
      s_ui = s.get_num().get_ui();
    }
  }
};

void term_scalar(mpfr_ptr out, const Rat& den, const ScalarPlan& plan) {
  Rat a = abs(den);
  mpfr_set_q(out, a.get_mpq_t(), MPFR_RNDN);
  if (plan.s_is_uint) {
    mpfr_pow_ui(out, out, plan.s_ui, MPFR_RNDN);
  } else {
    mpfr_pow(out, out, plan.s_val.raw(), MPFR_RNDN);
  }
  mpfr_ui_div(out, 1, out, MPFR_RNDN);
}

// Interval-mode term plan. When s converts exactly into the working
// precision the monotone power path applies; otherwise the term is
// exp(-s log |den|) with s itself enclosed.
struct EncPlan {
  mpfr_prec_t prec;
  bool s_exact;
  Real s_val;
  Interval s_enc;

  EncPlan(const Rat& s, mpfr_prec_t prec_in)
      : prec(prec_in),
        s_exact(false),
        s_val(Real::of(s, prec_in, MPFR_RNDD)),
        s_enc(Interval::of_rat(s, prec_in)) {
    Real up = Real::of(s, prec_in, MPFR_RNDU);
    s_exact = s_val.cmp(up) == 0;
  }

  Interval term(const Interval& den_abs) const {
    if (s_exact) return den_abs.pow(s_val).recip();
    return (-(den_abs.log() * s_enc)).exp();
  }
};

// Row steps for the left-to-right word product: the running vector is
// (1, alpha, beta) times the prefix matrix, and the final third component is
// the term denominator x + alpha y + beta z.
//   sigma = 1: (r1, r2, r3) -> (r1 - r3, r2, r3)
//   sigma = 0: (r1, r2, r3) -> (r2, r3, r1 - r2)
void step_row(const std::array<Int, 3>& p, int sigma, std::array<Int, 3>& q) {
  if (sigma == 1) {
    q[0] = p[0] - p[2];
    q[1] = p[1];
    q[2] = p[2];
  } else {
    q[0] = p[1];
    q[1] = p[2];
    q[2] = p[0] - p[1];
  }
}

void step_row_inplace(std::array<Int, 3>& r, int sigma, Int& tmp) {
  if (sigma == 1) {
    r[0] -= r[2];
  } else {
    tmp = r[0] - r[1];
    mpz_swap(r[0].get_mpz_t(), r[1].get_mpz_t());
    mpz_swap(r[1].get_mpz_t(), r[2].get_mpz_t());
    mpz_swap(r[2].get_mpz_t(), tmp.get_mpz_t());
  }
}

struct EncRow {
  Interval a, b, c;
  explicit EncRow(mpfr_prec_t p) : a(p), b(p), c(p) {}
};

void step_row(const EncRow& p, int sigma, EncRow& q) {
  if (sigma == 1) {
    q.a = p.a - p.c;
    q.b = p.b;
    q.c = p.c;
  } else {
    q.a = p.b;
    q.b = p.c;
    q.c = p.a - p.b;
  }
}

// Letters of block `block` under the canonical order: word index i visits
// sigma_j = 1 - bit, most significant bit first, so the sigma = 1 branch
// comes before sigma = 0 everywhere and word 1...1 is visited first.
std::string block_prefix_letters(long block, long b) {
  std::string out;
  out.reserve(static_cast<size_t>(b));
  for (long j = 1; j <= b; ++j) {
    int sigma = 1 - static_cast<int>((block >> (b - j)) & 1);
    out.push_back(sigma ? '1' : '0');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact mode: alpha = A/D, beta = B/D with D the common denominator, so the
// running row is the integer vector (D, A, B) * prefix and a pole is the
// exact test r3 == 0. min |r3| is tracked as an integer; the true minimum
// denominator is min |r3| / D.
// ---------------------------------------------------------------------------

struct ExactCtx {
  long N = 0, b = 0, L = 0;
  Int D;
  std::array<Int, 3> start;
  const ScalarPlan* plan = nullptr;
};

struct ExactBlock {
  Real acc;
  std::optional<Int> min_abs;
  long pole_count = 0;
  std::string first_pole;

  explicit ExactBlock(mpfr_prec_t prec) : acc(prec) {}
};

ExactBlock run_exact_block(const ExactCtx& ctx, long block) {
  const long L = ctx.L;
  ExactBlock out(ctx.plan->prec);

  std::vector<std::array<Int, 3>> node(static_cast<size_t>(L) + 1);
  std::vector<int> path(static_cast<size_t>(L > 0 ? L : 1), 1);
  std::string prefix = block_prefix_letters(block, ctx.b);

  node[0] = ctx.start;
  Int tmp;
  for (long j = 0; j < ctx.b; ++j) {
    step_row_inplace(node[0], prefix[static_cast<size_t>(j)] == '1' ? 1 : 0, tmp);
  }

  mpfr_t term;
  mpfr_init2(term, ctx.plan->prec);

  auto leaf = [&](const std::array<Int, 3>& r) {
    const Int& z3 = r[2];
    if (sgn_of(z3) == Sgn::Zero) {
      ++out.pole_count;
      if (out.first_pole.empty()) {
        out.first_pole = prefix;
        for (long i = 0; i < L; ++i) {
          out.first_pole.push_back(path[static_cast<size_t>(i)] ? '1' : '0');
        }
      }
      return;
    }
    if (!out.min_abs ||
        mpz_cmpabs(z3.get_mpz_t(), out.min_abs->get_mpz_t()) < 0) {
      out.min_abs = abs(z3);
    }
    Rat den(z3, ctx.D);
    den.canonicalize();
    term_scalar(term, den, *ctx.plan);
    mpfr_add(out.acc.raw(), out.acc.raw(), term, MPFR_RNDN);
  };

  auto dfs = [&](auto&& self, long depth) -> void {
    if (depth == L) {
      leaf(node[static_cast<size_t>(depth)]);
      return;
    }
    path[static_cast<size_t>(depth)] = 1;
    step_row(node[static_cast<size_t>(depth)], 1, node[static_cast<size_t>(depth) + 1]);
    self(self, depth + 1);
    path[static_cast<size_t>(depth)] = 0;
    step_row(node[static_cast<size_t>(depth)], 0, node[static_cast<size_t>(depth) + 1]);
    self(self, depth + 1);
  };
  dfs(dfs, 0);

  mpfr_clear(term);
  return out;
}

PartitionResult run_exact(const RationalPair& pr, long N, const Rat& s,
                          mpfr_prec_t prec, unsigned workers, bool* suggest_rerun) {
  ExactCtx ctx;
  ctx.N = N;
  ctx.b = partition_block_bits(N);
  ctx.L = N - ctx.b;
  mpz_lcm(ctx.D.get_mpz_t(), pr.alpha.get_den().get_mpz_t(),
          pr.beta.get_den().get_mpz_t());
  ctx.start[0] = ctx.D;
  ctx.start[1] = pr.alpha.get_num() * (ctx.D / pr.alpha.get_den());
  ctx.start[2] = pr.beta.get_num() * (ctx.D / pr.beta.get_den());
  ScalarPlan plan(s, prec);
  ctx.plan = &plan;

  Real acc(prec);
  std::optional<Int> min_abs;
  long pole_count = 0;
  std::string first_pole;

  long nblocks = 1L << ctx.b;
  parallel_blocks<ExactBlock>(
      nblocks, workers, [&](long blk) { return run_exact_block(ctx, blk); },
      [&](ExactBlock&& blk) {
        mpfr_add(acc.raw(), acc.raw(), blk.acc.raw(), MPFR_RNDN);
        if (blk.min_abs &&
            (!min_abs || mpz_cmpabs(blk.min_abs->get_mpz_t(),
                                    min_abs->get_mpz_t()) < 0)) {
          min_abs = std::move(*blk.min_abs);
        }
        pole_count += blk.pole_count;
        if (first_pole.empty() && !blk.first_pole.empty()) {
          first_pole = std::move(blk.first_pole);
        }
      });

  PartitionResult res;
  res.N = N;
  res.s = s;
  res.precision_bits = static_cast<long>(prec);
  res.value = acc;
  res.pole = pole_count > 0;
  res.pole_word = first_pole;
  res.pole_count = pole_count;
  res.min_denom = Real(prec);
  *suggest_rerun = false;
  if (res.pole) {
    // min_denom is exactly zero: a pole was hit. Exact zeros gain nothing
    // from more precision, so no re-run.
  } else if (min_abs) {
    Rat min_den(*min_abs, ctx.D);
    min_den.canonicalize();
    res.min_denom = Real::of(min_den, prec, MPFR_RNDD);
    Int scaled = *min_abs << static_cast<unsigned long>(prec / 2);
    *suggest_rerun = scaled < ctx.D;  // min denominator below 2^-(prec/2)
  }
  return res;
}

// ---------------------------------------------------------------------------
// Certified mode: the row entries are intervals; a leaf whose third
// component cannot be separated from zero counts as a pole and is excluded
// (and the engine later re-runs once at doubled precision unless the zero is
// exact). min_denom is the smallest certified lower bound on |r3|.
// ---------------------------------------------------------------------------

struct EncCtx {
  long N = 0, b = 0, L = 0;
  mpfr_prec_t prec = 0;
  const Interval* alpha = nullptr;
  const Interval* beta = nullptr;
  const EncPlan* plan = nullptr;
};

struct EncBlock {
  Interval acc;
  std::optional<Real> min_lo;
  long pole_count = 0;
  bool fuzzy_pole = false;  // a pole leaf whose interval is not exactly zero
  std::string first_pole;

  explicit EncBlock(mpfr_prec_t prec) : acc(prec) {}
};

EncBlock run_enc_block(const EncCtx& ctx, long block) {
  const long L = ctx.L;
  EncBlock out(ctx.prec);

  std::vector<EncRow> node;
  node.reserve(static_cast<size_t>(L) + 1);
  for (long i = 0; i <= L; ++i) node.emplace_back(ctx.prec);
  std::vector<int> path(static_cast<size_t>(L > 0 ? L : 1), 1);
  std::string prefix = block_prefix_letters(block, ctx.b);

  node[0].a = Interval::of_int(1L, ctx.prec);
  node[0].b = *ctx.alpha;
  node[0].c = *ctx.beta;
  for (long j = 0; j < ctx.b; ++j) {
    EncRow next(ctx.prec);
    step_row(node[0], prefix[static_cast<size_t>(j)] == '1' ? 1 : 0, next);
    node[0] = std::move(next);
  }

  auto leaf = [&](const EncRow& r) {
    if (r.c.contains_zero()) {
      ++out.pole_count;
      if (!r.c.is_exact_zero()) out.fuzzy_pole = true;
      if (out.first_pole.empty()) {
        out.first_pole = prefix;
        for (long i = 0; i < L; ++i) {
          out.first_pole.push_back(path[static_cast<size_t>(i)] ? '1' : '0');
        }
      }
      return;
    }
    Interval a = r.c.abs();
    if (!out.min_lo || a.lo().cmp(*out.min_lo) < 0) out.min_lo = a.lo();
    out.acc = out.acc + ctx.plan->term(a);
  };

  auto dfs = [&](auto&& self, long depth) -> void {
    if (depth == L) {
      leaf(node[static_cast<size_t>(depth)]);
      return;
    }
    path[static_cast<size_t>(depth)] = 1;
    step_row(node[static_cast<size_t>(depth)], 1, node[static_cast<size_t>(depth) + 1]);
    self(self, depth + 1);
    path[static_cast<size_t>(depth)] = 0;
    step_row(node[static_cast<size_t>(depth)], 0, node[static_cast<size_t>(depth) + 1]);
    self(self, depth + 1);
  };
  dfs(dfs, 0);

  return out;
}

PartitionResult run_enc(const RealPair& pr, long N, const Rat& s,
                        mpfr_prec_t prec, unsigned workers, bool* suggest_rerun) {
  EncCtx ctx;
  ctx.N = N;
  ctx.b = partition_block_bits(N);
  ctx.L = N - ctx.b;
  ctx.prec = prec;
  Interval alpha = pr.alpha.at_precision(prec);
  Interval beta = pr.beta.at_precision(prec);
  ctx.alpha = &alpha;
  ctx.beta = &beta;
  EncPlan plan(s, prec);
  ctx.plan = &plan;

  Interval acc(prec);
  std::optional<Real> min_lo;
  long pole_count = 0;
  bool fuzzy_pole = false;
  std::string first_pole;

  long nblocks = 1L << ctx.b;
  parallel_blocks<EncBlock>(
      nblocks, workers, [&](long blk) { return run_enc_block(ctx, blk); },
      [&](EncBlock&& blk) {
        acc = acc + blk.acc;
        if (blk.min_lo && (!min_lo || blk.min_lo->cmp(*min_lo) < 0)) {
          min_lo = std::move(*blk.min_lo);
        }
        pole_count += blk.pole_count;
        fuzzy_pole = fuzzy_pole || blk.fuzzy_pole;
        if (first_pole.empty() && !blk.first_pole.empty()) {
          first_pole = std::move(blk.first_pole);
        }
      });

  PartitionResult res;
  res.N = N;
  res.s = s;
  res.precision_bits = static_cast<long>(prec);
  res.value_enc = acc;
  res.value = acc.midpoint();
  res.pole = pole_count > 0;
  res.pole_word = first_pole;
  res.pole_count = pole_count;
  res.min_denom = Real(prec);
  *suggest_rerun = fuzzy_pole;
  if (!res.pole && min_lo) {
    res.min_denom = *min_lo;
    Real threshold(prec);
    mpfr_set_ui_2exp(threshold.raw(), 1, -(prec / 2), MPFR_RNDN);
    if (min_lo->cmp(threshold) < 0) *suggest_rerun = true;
  }
  return res;
}

}  // namespace

PartitionResult z_value(const PairRepr& pair, long N, const Rat& s,
                        mpfr_prec_t prec, unsigned threads) {
  if (N < 1) throw OutOfDomain("word length N must be >= 1");
  if (sgn_of(s) != Sgn::Pos) throw OutOfDomain("exponent s must be > 0");
  unsigned workers =
      threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;

  auto resolved = pair.resolve();
  bool rerun = false;
  if (const auto* rp = std::get_if<RationalPair>(&resolved)) {
    PartitionResult res = run_exact(*rp, N, s, prec, workers, &rerun);
    if (rerun) res = run_exact(*rp, N, s, prec * 2, workers, &rerun);
    return res;
  }
  const RealPair& xp = std::get<RealPair>(resolved);
  PartitionResult res = run_enc(xp, N, s, prec, workers, &rerun);
  if (rerun) res = run_enc(xp, N, s, prec * 2, workers, &rerun);
  return res;
}

Real term_value(const Rat& den, const Rat& s, mpfr_prec_t prec) {
  if (sgn_of(den) == Sgn::Zero) {
    throw PoleError("term denominator is exactly zero", "");
  }
  if (sgn_of(s) != Sgn::Pos) throw OutOfDomain("exponent s must be > 0");
  ScalarPlan plan(s, prec);
  Real out(prec);
  term_scalar(out.raw(), den, plan);
  return out;
}

FreeEnergyTrace free_energy_trace(const PairRepr& pair, long n_min, long n_max,
                                  const Rat& s, const Rat& k, mpfr_prec_t prec,
                                  unsigned threads, bool classic) {
  if (n_min < 1 || n_max < n_min) throw OutOfDomain("need 1 <= n_min <= n_max");
  FreeEnergyTrace tr;
  tr.s = s;
  tr.k = k;
  tr.precision_bits = static_cast<long>(prec);
  tr.classic = classic;
  tr.entries.reserve(static_cast<size_t>(n_max - n_min + 1));

  for (long N = n_min; N <= n_max; ++N) {
    TraceEntry e;
    e.z = z_value(pair, N, s, prec, threads);
    const mpfr_prec_t p = static_cast<mpfr_prec_t>(e.z.precision_bits);

    e.log_value = Real(p);
    mpfr_log(e.log_value.raw(), e.z.value.raw(), MPFR_RNDN);
    Real denom(p);
    if (classic) {
      mpfr_set_si(denom.raw(), N, MPFR_RNDN);
    } else {
      Real nk(p);
      mpfr_set_si(nk.raw(), N, MPFR_RNDN);
      Real kk = Real::of(k, p, MPFR_RNDN);
      mpfr_pow(nk.raw(), nk.raw(), kk.raw(), MPFR_RNDN);
      Real ss = Real::of(s, p, MPFR_RNDN);
      mpfr_mul(denom.raw(), ss.raw(), nk.raw(), MPFR_RNDN);
    }
    e.normalized = Real(p);
    mpfr_div(e.normalized.raw(), e.log_value.raw(), denom.raw(), MPFR_RNDN);

    if (e.z.value_enc && mpfr_sgn(e.z.value_enc->lo().raw()) > 0) {
      Interval lg = e.z.value_enc->log();
      Interval dn = classic
                        ? Interval::of_int(Int(N), p)
                        : Interval::of_rat(s, p) *
                              (Interval::of_int(Int(N), p).log() *
                               Interval::of_rat(k, p))
                                  .exp();
      e.normalized_enc = lg / dn;
      e.log_value = lg.midpoint();
      e.normalized = e.normalized_enc->midpoint();
    }
    tr.entries.push_back(std::move(e));
  }
  return tr;
}

Real distinguished_term(const PairRepr& pair, const DigitSequence& digits, long m,
                        const Rat& s, mpfr_prec_t prec) {
  if (m < 1 || m > digits.size()) {
    throw OutOfDomain("need 1 <= m <= digit count");
  }
  DigitSequence head = digits.prefix(m);

  auto resolved = pair.resolve();
  if (const auto* rp = std::get_if<RationalPair>(&resolved)) {
    std::vector<Rat> ds = d_values(*rp, head);
    const Rat& d = ds.back();  // subscript m - 1
    if (sgn_of(d) == Sgn::Zero) {
      throw PoleError("d = 0 at the distinguished word: the sequence terminates",
                      "d[" + std::to_string(m - 1) + "]");
    }
    return term_value(d, s, prec);
  }
  const RealPair& xp = std::get<RealPair>(resolved);
  std::vector<Interval> ds = d_values(xp, head);
  const Interval& d = ds.back();
  if (d.is_exact_zero()) {
    throw PoleError("d = 0 at the distinguished word: the sequence terminates",
                    "d[" + std::to_string(m - 1) + "]");
  }
  if (d.contains_zero()) {
    throw PrecisionExhausted("d indistinguishable from 0 at level " +
                             std::to_string(m - 1));
  }
  EncPlan plan(s, prec);
  return plan.term(d.at_precision(prec).abs()).midpoint();
}

}  // namespace tritherm
