#include "tritherm/io.hpp"

#include <cstdio>
#include <sstream>

namespace tritherm {

std::string decimal(const Real& v) {
  // prec * log10(2) significant digits, plus guard digits, so distinct
  // representable values render distinctly.
  long digits = (static_cast<long>(v.precision()) * 30103) / 100000 + 3;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*R*g", static_cast<int>(digits), MPFR_RNDN, v.raw());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string rational_text(const Rat& q) { return q.get_str(); }

namespace {

json entry_json(const TraceEntry& e, const Rat& s, const Rat& k) {
  json row;
  row["N"] = e.z.N;
  row["s"] = rational_text(s);
  row["k"] = rational_text(k);
  row["value"] = decimal(e.z.value);
  row["log_value"] = decimal(e.log_value);
  row["normalized"] = decimal(e.normalized);
  row["min_denom"] = decimal(e.z.min_denom);
  row["pole"] = e.z.pole_word;
  row["precision_bits"] = e.z.precision_bits;
  return row;
}

std::string csv_field(std::string s) {
  // No field we emit contains commas or quotes; keep the writer honest anyway.
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  }
  return s;
}

}  // namespace

std::string trace_csv(const FreeEnergyTrace& tr) {
  std::ostringstream os;
  os << "N,s,k,value,log_value,normalized,min_denom,pole,precision_bits\n";
  for (const TraceEntry& e : tr.entries) {
    os << e.z.N << ',' << csv_field(rational_text(tr.s)) << ','
       << csv_field(rational_text(tr.k)) << ',' << csv_field(decimal(e.z.value))
       << ',' << csv_field(decimal(e.log_value)) << ','
       << csv_field(decimal(e.normalized)) << ','
       << csv_field(decimal(e.z.min_denom)) << ',' << csv_field(e.z.pole_word)
       << ',' << e.z.precision_bits << '\n';
  }
  return os.str();
}

json trace_json(const FreeEnergyTrace& tr) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["s"] = rational_text(tr.s);
  out["k"] = rational_text(tr.k);
  out["precision_bits"] = tr.precision_bits;
  out["classic_normalization"] = tr.classic;
  json rows = json::array();
  for (const TraceEntry& e : tr.entries) rows.push_back(entry_json(e, tr.s, tr.k));
  out["entries"] = std::move(rows);
  return out;
}

json digits_json(const DigitSequence& d) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["digits"] = d.to_decimal_strings();
  out["terminated"] = d.terminated;
  return out;
}

namespace {

json point_json(const RationalPoint2& p) {
  return json::array({rational_text(p.u), rational_text(p.v)});
}

}  // namespace

json enclosure_json(const Enclosure& e) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["digits"] = e.digits.to_decimal_strings();
  out["depth"] = e.depth;
  out["vertices"] = json::array({point_json(e.vertices.v0), point_json(e.vertices.v1),
                                 point_json(e.vertices.v2)});
  out["representative"] = point_json(e.representative);
  return out;
}

json fit_json(const DiophantineFit& f) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["d"] = rational_text(f.d);
  out["B_max"] = f.B_max;
  out["C"] = decimal(f.C);
  out["witness"] = json::array({f.witness[0], f.witness[1], f.witness[2]});
  out["min_form"] = decimal(f.min_form);
  out["triples_checked"] = f.triples_checked;
  return out;
}

json theorem2_json(const Theorem2Report& r) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["s"] = rational_text(r.s);
  out["k"] = rational_text(r.k);
  out["d"] = rational_text(r.d);
  out["B_max"] = r.B_max;
  out["n_min"] = r.n_min;
  out["n_max"] = r.n_max;
  out["tail_start"] = r.tail_start;
  out["exploratory"] = r.exploratory;
  out["fit"] = fit_json(r.fit);
  json rows = json::array();
  for (size_t i = 0; i < r.trace.entries.size(); ++i) {
    json row = entry_json(r.trace.entries[i], r.s, r.k);
    row["fib_bound"] = decimal(r.bounds[i]);
    rows.push_back(std::move(row));
  }
  out["entries"] = std::move(rows);
  out["pointwise_ok"] = r.pointwise_ok;
  out["tail_decreasing"] = r.tail_decreasing;
  out["final_normalized"] = decimal(r.final_normalized);
  out["threshold"] = rational_text(r.threshold);
  out["final_below"] = r.final_below;
  return out;
}

json divergence_json(const DivergenceReport& r) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["s"] = rational_text(r.s);
  out["k"] = rational_text(r.cfg.k);
  switch (r.cfg.f) {
    case Theorem1Config::Growth::Linear:
      out["f"] = "linear";
      break;
    case Theorem1Config::Growth::Log:
      out["f"] = "log";
      break;
    case Theorem1Config::Growth::Const:
      out["f"] = "const";
      break;
  }
  out["f_const"] = rational_text(r.cfg.f_const);
  out["a1"] = r.cfg.a1.get_str();
  out["m_max"] = r.cfg.m_max;
  out["bit_budget"] = r.cfg.bit_budget;
  out["verdict"] = r.verdict;
  out["overflowed"] = r.overflowed;
  out["levels_achieved"] = r.levels_achieved;
  out["next_digit_bits"] = r.next_digit_bits;
  json levels = json::array();
  for (const Theorem1Level& lev : r.levels) {
    json row;
    row["m"] = lev.m;
    row["a_next"] = lev.a_next;
    row["a_bits"] = lev.a_bits;
    row["N_m"] = lev.N_m.get_str();
    row["x_bits"] = lev.x_bits;
    row["x_gt_a"] = lev.x_gt_a;
    row["a_gt_exp"] = lev.a_gt_exp;
    row["lower_bound"] = decimal(lev.lower_bound);
    row["threshold"] = decimal(lev.threshold);
    row["lower_gt_threshold"] = lev.lower_gt_threshold;
    if (lev.lemma_holds) {
      row["lemma_holds"] = *lev.lemma_holds;
    } else {
      row["lemma_holds"] = nullptr;
    }
    levels.push_back(std::move(row));
  }
  out["levels"] = std::move(levels);
  out["term_vs_sum_checked"] = r.term_vs_sum_checked;
  out["term_vs_sum_ok"] = r.term_vs_sum_ok;
  out["distinguished_term"] = decimal(r.distinguished);
  out["z_at_n1"] = decimal(r.z_at_n1);
  return out;
}

}  // namespace tritherm
