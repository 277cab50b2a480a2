#include "entrolab/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "entrolab/errors.hpp"
#include "entrolab/series.hpp"

namespace entrolab {

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& what) {
  if (!j.is_object())
    fail(ErrorCode::schema_error, what + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) {
        ok = true;
        break;
      }
    if (!ok)
      fail(ErrorCode::schema_error,
           "unknown field '" + it.key() + "' in " + what);
  }
}

const json& need(const json& j, const char* key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end())
    fail(ErrorCode::schema_error, what + " is missing field '" + key + "'");
  return *it;
}

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer())
    fail(ErrorCode::schema_error, what + " must be an integer");
  return j.get<int>();
}

uint64_t as_u64(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    fail(ErrorCode::schema_error, what + " must be a non-negative integer");
  return j.get<uint64_t>();
}

std::string as_str(const json& j, const std::string& what) {
  if (!j.is_string())
    fail(ErrorCode::schema_error, what + " must be a string");
  return j.get<std::string>();
}

int parse_int_key(const std::string& s, const std::string& what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(ErrorCode::schema_error, what + ": key '" + s + "' is not an integer");
  return v;
}

BaseTable parse_base_table(const json& b) {
  if (b.is_string()) {
    std::string s = b.get<std::string>();
    if (s == "ut3_f2") return ut3_f2_table();
    if (s == "ut4_f2") return ut4_f2_table();
    if (s == "s3") return symmetric3_table();
    if (s.rfind("z_", 0) == 0)
      return cyclic_table(parse_int_key(s.substr(2), "builtin table"));
    fail(ErrorCode::schema_error, "unknown builtin table '" + s + "'");
  }
  check_keys(b, {"order", "mul"}, "inline table");
  int order = as_int(need(b, "order", "inline table"), "order");
  const json& m = need(b, "mul", "inline table");
  if (!m.is_array())
    fail(ErrorCode::schema_error, "inline table mul must be an array");
  std::vector<int16_t> mul;
  for (const json& v : m)
    mul.push_back(static_cast<int16_t>(as_int(v, "mul entry")));
  return make_table(order, std::move(mul));
}

std::vector<std::pair<int, int>> parse_support(const json& j,
                                               const std::string& what) {
  if (!j.is_object())
    fail(ErrorCode::schema_error, what + " must be a JSON object");
  std::vector<std::pair<int, int>> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out.emplace_back(parse_int_key(it.key(), what),
                     as_int(it.value(), what + " value"));
  return out;
}

}  // namespace

Family parse_family(const json& j) {
  std::string kind = as_str(need(j, "kind", "family"), "family kind");
  if (kind == "finite" || kind == "direct_sum") {
    check_keys(j, {"kind", "base"}, "family");
    BaseTable t = parse_base_table(need(j, "base", "family"));
    return kind == "finite" ? finite_family(std::move(t))
                            : direct_sum_family(std::move(t));
  }
  if (kind == "poly_heis" || kind == "finitary_ut") {
    check_keys(j, {"kind", "p"}, "family");
    int p = as_int(need(j, "p", "family"), "p");
    return kind == "poly_heis" ? poly_heis_family(p) : finitary_ut_family(p);
  }
  fail(ErrorCode::schema_error, "unknown family kind '" + kind + "'");
}

Elem parse_element(const Family& fam, const json& j) {
  std::string f = as_str(need(j, "family", "element"), "element family");
  if (f != family_kind_name(fam.kind))
    fail(ErrorCode::schema_error, "element literal for family '" + f +
                                      "' in a '" +
                                      family_kind_name(fam.kind) +
                                      "' scenario");
  switch (fam.kind) {
    case FamilyKind::finite: {
      check_keys(j, {"family", "index"}, "element");
      return finite_elem(fam, as_int(need(j, "index", "element"), "index"));
    }
    case FamilyKind::direct_sum: {
      check_keys(j, {"family", "support"}, "element");
      return direct_sum_elem(
          fam, parse_support(need(j, "support", "element"), "support"));
    }
    case FamilyKind::poly_heis: {
      check_keys(j, {"family", "a", "b", "c"}, "element");
      return poly_heis_elem(fam, parse_support(need(j, "a", "element"), "a"),
                            parse_support(need(j, "b", "element"), "b"),
                            parse_support(need(j, "c", "element"), "c"));
    }
    case FamilyKind::finitary_ut: {
      check_keys(j, {"family", "entries"}, "element");
      const json& es = need(j, "entries", "element");
      if (!es.is_array())
        fail(ErrorCode::schema_error, "entries must be an array");
      std::vector<std::array<int, 3>> entries;
      for (const json& e : es) {
        if (!e.is_array() || e.size() != 3)
          fail(ErrorCode::schema_error, "each entry must be [row, col, value]");
        entries.push_back({as_int(e[0], "row"), as_int(e[1], "col"),
                           as_int(e[2], "value")});
      }
      return finitary_ut_elem(fam, std::move(entries));
    }
  }
  fail(ErrorCode::schema_error, "unreachable");
}

json element_json(const Family& fam, const Elem& e) {
  json j;
  j["family"] = family_kind_name(fam.kind);
  switch (e.kind) {
    case FamilyKind::finite:
      j["index"] = e.data[0];
      break;
    case FamilyKind::direct_sum: {
      json sup = json::object();
      for (size_t i = 0; i < e.data.size(); i += 2)
        sup[std::to_string(e.data[i])] = e.data[i + 1];
      j["support"] = std::move(sup);
      break;
    }
    case FamilyKind::poly_heis: {
      json parts[3] = {json::object(), json::object(), json::object()};
      size_t pos = 3;
      for (int part = 0; part < 3; ++part)
        for (int i = 0; i < e.data[part]; ++i, pos += 2)
          parts[part][std::to_string(e.data[pos])] = e.data[pos + 1];
      j["a"] = std::move(parts[0]);
      j["b"] = std::move(parts[1]);
      j["c"] = std::move(parts[2]);
      break;
    }
    case FamilyKind::finitary_ut: {
      json entries = json::array();
      for (size_t i = 0; i < e.data.size(); i += 3)
        entries.push_back({e.data[i], e.data[i + 1], e.data[i + 2]});
      j["entries"] = std::move(entries);
      break;
    }
  }
  return j;
}

EndoPtr parse_endo(const Family& fam, const json& j, uint64_t seed) {
  std::string kind = as_str(need(j, "endo", "endo"), "endo kind");
  if (kind == "identity") {
    check_keys(j, {"endo"}, "endo");
    return make_identity(fam, seed);
  }
  if (kind == "shift") {
    check_keys(j, {"endo", "k"}, "endo");
    return make_shift(fam, as_int(need(j, "k", "endo"), "k"), seed);
  }
  if (kind == "t_scale") {
    check_keys(j, {"endo"}, "endo");
    return make_t_scale(fam, seed);
  }
  if (kind == "inner") {
    check_keys(j, {"endo", "g"}, "endo");
    return make_inner(fam, parse_element(fam, need(j, "g", "endo")), seed);
  }
  if (kind == "diagonal") {
    check_keys(j, {"endo", "map"}, "endo");
    const json& m = need(j, "map", "endo");
    if (!m.is_array())
      fail(ErrorCode::schema_error, "diagonal map must be an array");
    std::vector<int16_t> map;
    for (const json& v : m)
      map.push_back(static_cast<int16_t>(as_int(v, "map entry")));
    return make_diagonal(fam, std::move(map), seed);
  }
  if (kind == "compose") {
    check_keys(j, {"endo", "list"}, "endo");
    const json& l = need(j, "list", "endo");
    if (!l.is_array())
      fail(ErrorCode::schema_error, "compose list must be an array");
    std::vector<EndoPtr> list;
    for (const json& e : l) list.push_back(parse_endo(fam, e, seed));
    return make_compose(fam, std::move(list), seed);
  }
  fail(ErrorCode::schema_error, "unknown endo kind '" + kind + "'");
}

DescPtr parse_descriptor(const Family& fam, const json& j, uint64_t seed) {
  std::string kind = as_str(need(j, "kind", "descriptor"), "descriptor kind");
  if (kind == "whole") {
    check_keys(j, {"kind"}, "descriptor");
    return desc_whole(fam);
  }
  if (kind == "trivial") {
    check_keys(j, {"kind"}, "descriptor");
    return desc_trivial(fam);
  }
  if (kind == "center") {
    check_keys(j, {"kind"}, "descriptor");
    return desc_center(fam);
  }
  if (kind == "torsion") {
    check_keys(j, {"kind", "n"}, "descriptor");
    return desc_torsion(fam, as_u64(need(j, "n", "descriptor"), "n"));
  }
  if (kind == "coordinatewise") {
    check_keys(j, {"kind", "base_indices"}, "descriptor");
    const json& bi = need(j, "base_indices", "descriptor");
    if (!bi.is_array())
      fail(ErrorCode::schema_error, "base_indices must be an array");
    std::vector<int> idx;
    for (const json& v : bi) idx.push_back(as_int(v, "base index"));
    return desc_coordinatewise(fam, std::move(idx));
  }
  if (kind == "generated") {
    check_keys(j, {"kind", "gens"}, "descriptor");
    const json& gs = need(j, "gens", "descriptor");
    if (!gs.is_array())
      fail(ErrorCode::schema_error, "gens must be an array");
    std::vector<Elem> gens;
    for (const json& g : gs) gens.push_back(parse_element(fam, g));
    return desc_finite(fam, from_generators(fam, std::move(gens)));
  }
  if (kind == "upper_central") {
    check_keys(j, {"kind", "i"}, "descriptor");
    return desc_upper_central(fam, as_int(need(j, "i", "descriptor"), "i"));
  }
  fail(ErrorCode::schema_error, "unknown descriptor kind '" + kind + "'");
}

namespace {

FiniteSubgroup parse_subgroup(const Family& fam, const json& j,
                              uint64_t closure_budget) {
  std::string kind = as_str(need(j, "kind", "subgroup"), "subgroup kind");
  if (kind == "ball") {
    check_keys(j, {"kind", "radius"}, "subgroup");
    return ball(fam, as_int(need(j, "radius", "subgroup"), "radius"),
                closure_budget);
  }
  if (kind == "generated") {
    check_keys(j, {"kind", "gens"}, "subgroup");
    const json& gs = need(j, "gens", "subgroup");
    if (!gs.is_array())
      fail(ErrorCode::schema_error, "gens must be an array");
    std::vector<Elem> gens;
    for (const json& g : gs) gens.push_back(parse_element(fam, g));
    return from_generators(fam, std::move(gens), closure_budget);
  }
  if (kind == "whole") {
    check_keys(j, {"kind"}, "subgroup");
    return whole_group(fam);
  }
  fail(ErrorCode::schema_error, "unknown subgroup kind '" + kind + "'");
}

std::vector<LadderRung> parse_ladder(const Family& fam, const json& j,
                                     uint64_t closure_budget) {
  std::string kind = as_str(need(j, "kind", "ladder"), "ladder kind");
  std::vector<LadderRung> rungs;
  if (kind == "support_balls") {
    check_keys(j, {"kind", "radii"}, "ladder");
    const json& rs = need(j, "radii", "ladder");
    if (!rs.is_array() || rs.empty())
      fail(ErrorCode::schema_error, "radii must be a nonempty array");
    for (const json& r : rs) {
      int radius = as_int(r, "radius");
      rungs.push_back({"ball(" + std::to_string(radius) + ")",
                       ball(fam, radius, closure_budget).elements.items()});
    }
    return rungs;
  }
  if (kind == "generated") {
    check_keys(j, {"kind", "rungs"}, "ladder");
    const json& rs = need(j, "rungs", "ladder");
    if (!rs.is_array() || rs.empty())
      fail(ErrorCode::schema_error, "rungs must be a nonempty array");
    int i = 0;
    for (const json& r : rs) {
      if (!r.is_array())
        fail(ErrorCode::schema_error, "each rung must be a generator array");
      std::vector<Elem> gens;
      for (const json& g : r) gens.push_back(parse_element(fam, g));
      rungs.push_back(
          {"rung(" + std::to_string(i++) + ")",
           from_generators(fam, std::move(gens), closure_budget)
               .elements.items()});
    }
    return rungs;
  }
  fail(ErrorCode::schema_error, "unknown ladder kind '" + kind + "'");
}

char fmt_buf[64];
std::string fmt(double x) {
  std::snprintf(fmt_buf, sizeof fmt_buf, "%.12g", x);
  return fmt_buf;
}

json estimate_json(const EntropyEstimate& est) {
  json j;
  j["increments"] = est.increments;
  j["prefix_inf"] = est.prefix_inf;
  j["stabilized_alpha"] =
      est.stabilized_ratio ? json(*est.stabilized_ratio) : json(nullptr);
  j["h_lower"] = est.h_lower;
  j["h_upper"] = est.h_upper;
  j["truncated"] = est.truncated;
  return j;
}

json ladder_json(const LadderResult& lr) {
  json rungs = json::array();
  for (size_t i = 0; i < lr.tables.size(); ++i) {
    json r;
    r["label"] = lr.labels[i];
    r["sizes"] = lr.tables[i].sizes;
    r["truncated"] = lr.tables[i].truncated;
    r["estimate"] = estimate_json(lr.estimates[i]);
    rungs.push_back(std::move(r));
  }
  json j;
  j["rungs"] = std::move(rungs);
  j["sup_alpha"] = lr.sup_alpha ? json(*lr.sup_alpha) : json(nullptr);
  j["sup_lower"] = lr.sup_lower;
  j["sup_upper"] = lr.sup_upper;
  j["all_stabilized"] = lr.all_stabilized;
  j["any_truncated"] = lr.any_truncated;
  j["monotone"] = lr.monotone;
  j["alphas_nondecreasing"] = lr.alphas_nondecreasing;
  return j;
}

// criterion helpers applied to every ladder in the suite: subadditivity of
// every rung table, pointwise size monotonicity, nondecreasing rung ratios
bool ladder_sound(const LadderResult& lr) {
  for (const TrajectoryTable& t : lr.tables)
    if (!check_fekete(t)) return false;
  return lr.monotone && lr.alphas_nondecreasing;
}

struct Ctx {
  std::string name;
  Family fam;
  EndoPtr endo;
  int n_max = 0, window = kDefaultWindow;
  uint64_t pbudget = kDefaultProductBudget, cbudget = kDefaultClosureBudget;
  uint64_t seed = 0;
};

void run_entropy(const Ctx& c, const json& j, ScenarioResult& res) {
  FiniteSubgroup f =
      parse_subgroup(c.fam, need(j, "f", "entropy scenario"), c.cbudget);
  TrajectoryTable t =
      trajectory(c.fam, c.endo, f.elements.items(), c.n_max, c.pbudget);
  EntropyEstimate est = h_estimate(t, c.window);
  bool fekete = check_fekete(t);
  res.report["scenario"] = c.name;
  res.report["table"] = {{"sizes", t.sizes}, {"truncated", t.truncated}};
  res.report["estimate"] = estimate_json(est);
  res.report["fekete"] = fekete;
  res.csv = entropy_csv(t, c.window);
  res.status = !fekete ? "violation" : (t.truncated ? "inconclusive" : "pass");
}

void run_ladder_mode(const Ctx& c, const json& j, ScenarioResult& res) {
  std::vector<LadderRung> rungs =
      parse_ladder(c.fam, need(j, "ladder", "ladder scenario"), c.cbudget);
  LadderResult lr =
      h_ladder(c.fam, c.endo, rungs, c.n_max, c.window, c.pbudget);
  res.report = ladder_json(lr);
  res.report["scenario"] = c.name;
  res.status = !ladder_sound(lr)
                   ? "violation"
                   : (lr.any_truncated ? "inconclusive" : "pass");
}

void run_series(const Ctx& c, const json& j, ScenarioResult& res) {
  if (c.fam.kind != FamilyKind::finite)
    fail(ErrorCode::schema_error, "series scenarios need a finite family");
  std::string kind = as_str(need(j, "series", "series scenario"), "series");
  FiniteSubgroup k = whole_group(c.fam);
  SeriesReport rep = [&] {
    if (kind == "lower_central") return lower_central_series(c.fam, k, c.cbudget);
    if (kind == "upper_central") return upper_central_series(c.fam, k, c.cbudget);
    if (kind == "derived") return derived_series(c.fam, k, c.cbudget);
    fail(ErrorCode::schema_error, "unknown series kind '" + kind + "'");
  }();
  res.report["kind"] = series_kind_name(rep.kind);
  res.report["orders"] = rep.orders;
  res.report["class"] =
      rep.degenerate() ? json(rep.class_label()) : json(rep.series_class);
  res.status = "pass";
}

void run_at(const Ctx& c, const json& j, ScenarioResult& res) {
  DescPtr h = parse_descriptor(c.fam, need(j, "h", "at scenario"), c.seed);
  std::vector<LadderRung> rungs =
      parse_ladder(c.fam, need(j, "ladder", "at scenario"), c.cbudget);
  ATReport rep =
      check_AT(c.fam, c.endo, h, rungs, c.n_max, c.window, c.pbudget, c.seed);
  json alphas;
  alphas["g"] = rep.alpha_g ? json(*rep.alpha_g) : json(nullptr);
  alphas["h"] = rep.alpha_h ? json(*rep.alpha_h) : json(nullptr);
  alphas["q"] = rep.alpha_q ? json(*rep.alpha_q) : json(nullptr);
  res.report["scenario"] = c.name;
  res.report["alphas"] = std::move(alphas);
  res.report["verdict"] = verdict_name(rep.verdict);
  res.report["tables"] = {{"g", ladder_json(rep.g)},
                          {"h", ladder_json(rep.h)},
                          {"q", ladder_json(rep.q)}};
  res.report["restricted"] = rep.restricted_name;
  res.report["induced"] = rep.induced_name;
  bool sound =
      ladder_sound(rep.g) && ladder_sound(rep.h) && ladder_sound(rep.q);
  if (rep.verdict == ATVerdict::violation || !sound)
    res.status = "violation";
  else if (rep.verdict == ATVerdict::inconclusive)
    res.status = "inconclusive";
  else
    res.status = "pass";
}

void run_chain(const Ctx& c, const json& j, ScenarioResult& res) {
  const json& ts = need(j, "chain", "chain scenario");
  if (!ts.is_array() || ts.empty())
    fail(ErrorCode::schema_error, "chain must be a nonempty array");
  std::vector<ChainTerm> terms;
  for (const json& t : ts) {
    check_keys(t, {"name", "descriptor", "ladder"}, "chain term");
    ChainTerm term;
    term.name = as_str(need(t, "name", "chain term"), "term name");
    term.desc =
        parse_descriptor(c.fam, need(t, "descriptor", "chain term"), c.seed);
    term.rungs = parse_ladder(term.desc->embedded,
                              need(t, "ladder", "chain term"), c.cbudget);
    terms.push_back(std::move(term));
  }
  std::vector<LadderRung> full =
      parse_ladder(c.fam, need(j, "ladder", "chain scenario"), c.cbudget);
  ChainReport rep = check_chain(c.fam, c.endo, terms, full, c.n_max, c.window,
                                c.pbudget, c.seed);
  json jterms = json::array();
  bool sound = ladder_sound(rep.full);
  for (size_t i = 0; i < rep.term_names.size(); ++i) {
    jterms.push_back({{"name", rep.term_names[i]},
                      {"alpha", rep.term_alphas[i] ? json(*rep.term_alphas[i])
                                                   : json(nullptr)},
                      {"ladder", ladder_json(rep.term_ladders[i])}});
    sound = sound && ladder_sound(rep.term_ladders[i]);
  }
  res.report["scenario"] = c.name;
  res.report["variant"] = "chain";
  res.report["terms"] = std::move(jterms);
  res.report["full"] = ladder_json(rep.full);
  res.report["ascending"] = rep.ascending;
  res.report["alphas_nondecreasing"] = rep.alphas_nondecreasing;
  res.report["sup_alpha"] =
      rep.sup_alpha ? json(*rep.sup_alpha) : json(nullptr);
  res.report["sup_matches_full"] = rep.sup_matches_full;
  res.report["verdict"] = rep.verdict();
  std::string v = rep.verdict();
  if (v == "violation" || !sound)
    res.status = "violation";
  else if (v == "inconclusive")
    res.status = "inconclusive";
  else
    res.status = "pass";
}

void run_dagger(const Ctx& c, const json& j, ScenarioResult& res) {
  DescPtr kernel =
      parse_descriptor(c.fam, need(j, "kernel", "dagger scenario"), c.seed);
  FiniteSubgroup f =
      parse_subgroup(c.fam, need(j, "f", "dagger scenario"), c.cbudget);
  bool trace = false;
  if (j.contains("trace_eta")) {
    if (!j["trace_eta"].is_boolean())
      fail(ErrorCode::schema_error, "trace_eta must be a boolean");
    trace = j["trace_eta"].get<bool>();
  }
  DaggerCertificate cert =
      check_dagger(c.fam, c.endo, kernel, f.elements.items(), c.n_max, trace,
                   c.pbudget, c.cbudget, c.seed);
  json rows = json::array();
  for (const DaggerRow& r : cert.rows)
    rows.push_back({{"n", r.n},
                    {"l_size", r.l_size},
                    {"c_size", r.c_size},
                    {"u_size", r.u_size},
                    {"k_size", r.k_size},
                    {"t_full", r.t_full},
                    {"t_quotient", r.t_quotient},
                    {"t_kernel", r.t_kernel},
                    {"slack", r.slack},
                    {"holds", r.holds}});
  res.report["scenario"] = c.name;
  res.report["kernel"] = cert.kernel_name;
  res.report["q_order"] = cert.q_order;
  res.report["section_fixes_identity"] = cert.section_fixes_identity;
  res.report["rows"] = std::move(rows);
  res.report["holds"] = cert.holds;
  res.report["verdict"] = cert.verdict();
  if (trace) {
    json eta = json::array();
    for (const auto& per_n : cert.eta) {
      json level = json::array();
      for (const auto& [t, e] : per_n)
        level.push_back(
            {{"t", element_json(c.fam, t)}, {"eta", element_json(c.fam, e)}});
      eta.push_back(std::move(level));
    }
    res.report["eta"] = std::move(eta);
  }
  std::string v = cert.verdict();
  res.status = v == "holds" ? "pass" : (v == "violation" ? "violation"
                                                         : "inconclusive");
}

}  // namespace

std::string entropy_csv(const TrajectoryTable& table, int window) {
  std::string out = "n,size,log_size,prefix_inf,increment,stabilized_alpha\n";
  const auto& s = table.sizes;
  double prefix = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < s.size(); ++i) {
    double log_size = std::log(static_cast<double>(s[i]));
    prefix = std::min(prefix, log_size / double(i + 1));
    out += std::to_string(i + 1) + "," + std::to_string(s[i]) + "," +
           fmt(log_size) + "," + fmt(prefix) + ",";
    if (i > 0)
      out += fmt(log_size - std::log(static_cast<double>(s[i - 1])));
    out += ",";
    // ratio constant (same exact integer) over the window ending here
    if (i + 1 >= static_cast<size_t>(window) + 1) {
      uint64_t alpha = 0;
      bool stable = true;
      for (size_t m = i + 1 - window; m <= i && stable; ++m) {
        if (s[m] % s[m - 1] != 0) {
          stable = false;
          break;
        }
        uint64_t r = s[m] / s[m - 1];
        if (alpha == 0) alpha = r;
        stable = r == alpha;
      }
      if (stable) out += std::to_string(alpha);
    }
    out += "\n";
  }
  return out;
}

bool json_matches(const json& expect, const json& actual,
                  const std::string& path, std::vector<std::string>& out) {
  if (expect.is_object() && actual.is_object()) {
    bool ok = true;
    for (auto it = expect.begin(); it != expect.end(); ++it) {
      std::string sub = path + "/" + it.key();
      if (!actual.contains(it.key())) {
        out.push_back(sub + ": missing in report");
        ok = false;
      } else if (!json_matches(it.value(), actual[it.key()], sub, out)) {
        ok = false;
      }
    }
    return ok;
  }
  if (expect.is_array() && actual.is_array()) {
    if (expect.size() != actual.size()) {
      out.push_back(path + ": expected " + std::to_string(expect.size()) +
                    " entries, got " + std::to_string(actual.size()));
      return false;
    }
    bool ok = true;
    for (size_t i = 0; i < expect.size(); ++i) {
      std::string sub = path + "/" + std::to_string(i);
      if (!json_matches(expect[i], actual[i], sub, out)) ok = false;
    }
    return ok;
  }
  if (expect != actual) {
    out.push_back(path + ": expected " + expect.dump() + ", got " +
                  actual.dump());
    return false;
  }
  return true;
}

ScenarioResult run_scenario_json(const json& j, const RunOverrides& ov) {
  if (!j.is_object())
    fail(ErrorCode::schema_error, "scenario must be a JSON object");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != 1)
    fail(ErrorCode::schema_error, "scenario needs schema_version 1");

  ScenarioResult res;
  res.name = as_str(need(j, "name", "scenario"), "name");
  res.mode = as_str(need(j, "mode", "scenario"), "mode");
  res.report = json::object();

  static const std::vector<const char*> base_keys = {
      "schema_version", "name",           "mode",   "family",
      "endo",           "seed",           "n_max",  "window",
      "product_budget", "closure_budget", "out",    "expect"};
  auto keys_plus = [&](std::initializer_list<const char*> extra) {
    std::vector<const char*> all = base_keys;
    all.insert(all.end(), extra.begin(), extra.end());
    return all;
  };
  auto check_mode_keys = [&](std::initializer_list<const char*> extra) {
    auto all = keys_plus(extra);
    if (!j.is_object()) return;
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool ok = false;
      for (const char* a : all)
        if (it.key() == a) {
          ok = true;
          break;
        }
      if (!ok)
        fail(ErrorCode::schema_error,
             "unknown field '" + it.key() + "' in scenario");
    }
  };

  Ctx c;
  c.name = res.name;
  c.seed = ov.seed ? *ov.seed
                   : (j.contains("seed") ? as_u64(j["seed"], "seed") : 0);
  c.fam = parse_family(need(j, "family", "scenario"));
  if (res.mode != "series")
    c.endo = parse_endo(c.fam, need(j, "endo", "scenario"), c.seed);
  if (ov.n_max)
    c.n_max = *ov.n_max;
  else if (j.contains("n_max"))
    c.n_max = as_int(j["n_max"], "n_max");
  else if (res.mode != "series")
    fail(ErrorCode::schema_error, "scenario is missing field 'n_max'");
  c.window = ov.window ? *ov.window
                       : (j.contains("window") ? as_int(j["window"], "window")
                                               : kDefaultWindow);
  c.pbudget = ov.product_budget
                  ? *ov.product_budget
                  : (j.contains("product_budget")
                         ? as_u64(j["product_budget"], "product_budget")
                         : kDefaultProductBudget);
  c.cbudget = ov.closure_budget
                  ? *ov.closure_budget
                  : (j.contains("closure_budget")
                         ? as_u64(j["closure_budget"], "closure_budget")
                         : kDefaultClosureBudget);
  if (j.contains("out")) res.out_path = as_str(j["out"], "out");

  try {
    if (res.mode == "entropy") {
      check_mode_keys({"f"});
      run_entropy(c, j, res);
    } else if (res.mode == "ladder") {
      check_mode_keys({"ladder"});
      run_ladder_mode(c, j, res);
    } else if (res.mode == "series") {
      check_mode_keys({"series"});
      run_series(c, j, res);
    } else if (res.mode == "at") {
      check_mode_keys({"h", "ladder"});
      run_at(c, j, res);
    } else if (res.mode == "chain") {
      check_mode_keys({"chain", "ladder"});
      run_chain(c, j, res);
    } else if (res.mode == "dagger") {
      check_mode_keys({"kernel", "f", "trace_eta"});
      run_dagger(c, j, res);
    } else {
      fail(ErrorCode::schema_error, "unknown mode '" + res.mode + "'");
    }
  } catch (const Error& e) {
    // resource limits are findings about the run, not about the mathematics
    if (e.code() == ErrorCode::closure_budget_exceeded ||
        e.code() == ErrorCode::product_budget_exceeded ||
        e.code() == ErrorCode::order_budget_exceeded) {
      res.report["scenario"] = c.name;
      res.report["budget_error"] = e.what();
      res.report["code"] = error_code_name(e.code());
      res.status = "inconclusive";
      return res;
    }
    throw;
  }

  if (j.contains("expect") && res.status == "pass") {
    if (!json_matches(j["expect"], res.report, "", res.mismatches))
      res.status = "mismatch";
  }
  return res;
}

ScenarioResult run_scenario_file(const std::string& path,
                                 const RunOverrides& ov) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::schema_error, "cannot open scenario " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::schema_error,
         "malformed JSON in " + path + ": " + e.what());
  }
  return run_scenario_json(j, ov);
}

}  // namespace entrolab
