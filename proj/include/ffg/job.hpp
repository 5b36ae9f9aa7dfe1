#pragma once

// One command-line job: what to compute and how to print it.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ffg/ffg.hpp"

namespace ffg {

enum class ExitCode : int { ok = 0, mismatch = 1, invalid_input = 2, internal_error = 3 };

struct JobSpec {
  std::string command;  ///< tableaux | compute | compare | perm | verify
  std::string shape;
  std::string flag;
  std::string perm;
  std::string method = "tableau";
  std::string format = "text";
  std::vector<std::string> specializations;  ///< "beta=0", "b=0"
  std::string suite;
  long trunc_margin = 0;
  bool grothendieck = false;
  std::uint64_t seed = 20240607;
  long samples = 25;
  // limits; unset means no limit for compute-style commands
  std::optional<long> max_rows, max_part, max_flag, max_size, n;
  std::optional<double> time_budget;
};

/// Comma-separated integers, e.g. "3,1". Empty text gives an empty list.
inline std::vector<long> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<long> out;
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && (item[used] == ' ' || item[used] == '\t')) ++used;
    if (used == 0 || used != item.size()) throw invalid_argument(what + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

/// Reads a JobSpec from JSON; keys mirror the command-line flags.
inline JobSpec job_from_json(const nlohmann::json& j) try {
  if (!j.is_object()) throw invalid_argument("job spec: expected a JSON object");
  JobSpec s;
  auto str = [&](const char* key, std::string& dst) {
    if (!j.contains(key)) return;
    if (j[key].is_string())
      dst = j[key].get<std::string>();
    else if (j[key].is_array()) {  // [3,1] for shapes and flags
      dst.clear();
      for (const auto& v : j[key]) {
        if (!v.is_number_integer()) throw invalid_argument(std::string("job spec: '") + key + "' must hold integers");
        dst += (dst.empty() ? "" : ",") + std::to_string(v.get<long>());
      }
    } else
      throw invalid_argument(std::string("job spec: '") + key + "' must be a string");
  };
  str("command", s.command);
  str("shape", s.shape);
  str("flag", s.flag);
  str("perm", s.perm);
  str("method", s.method);
  str("format", s.format);
  str("suite", s.suite);
  if (j.contains("specializations")) {
    if (!j["specializations"].is_array()) throw invalid_argument("job spec: 'specializations' must be an array");
    for (const auto& v : j["specializations"]) s.specializations.push_back(v.get<std::string>());
  }
  if (j.contains("trunc_margin")) s.trunc_margin = j["trunc_margin"].get<long>();
  if (j.contains("grothendieck")) s.grothendieck = j["grothendieck"].get<bool>();
  if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("samples")) s.samples = j["samples"].get<long>();
  if (j.contains("limits")) {
    const auto& l = j["limits"];
    if (!l.is_object()) throw invalid_argument("job spec: 'limits' must be an object");
    if (l.contains("max_rows")) s.max_rows = l["max_rows"].get<long>();
    if (l.contains("max_part")) s.max_part = l["max_part"].get<long>();
    if (l.contains("max_flag")) s.max_flag = l["max_flag"].get<long>();
    if (l.contains("max_size")) s.max_size = l["max_size"].get<long>();
    if (l.contains("n")) s.n = l["n"].get<long>();
    if (l.contains("time_budget")) s.time_budget = l["time_budget"].get<double>();
  }
  return s;
} catch (const nlohmann::json::exception& e) {
  throw invalid_argument(std::string("job spec: ") + e.what());
}

inline JobSpec job_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_argument("cannot read job spec '" + path + "'");
  try {
    return job_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw invalid_argument("job spec '" + path + "': " + e.what());
  }
}

namespace detail {

inline void check_limits(const JobSpec& s) {
  for (const auto& [name, v] : {std::pair{"max-rows", s.max_rows}, std::pair{"max-part", s.max_part},
                                std::pair{"max-flag", s.max_flag}, std::pair{"max-size", s.max_size},
                                std::pair{"n", s.n}})
    if (v && *v <= 0) throw invalid_argument(std::string("--") + name + " must be positive");
  if (s.time_budget && *s.time_budget <= 0) throw invalid_argument("--time-budget must be positive");
  if (s.trunc_margin < 0) throw invalid_argument("--trunc-margin must be non-negative");
  if (s.format != "text" && s.format != "json" && s.format != "latex")
    throw invalid_argument("unknown format '" + s.format + "' (text, json, latex)");
}

inline FlaggedPartition job_partition(const JobSpec& s) {
  FlaggedPartition fp;
  if (!s.perm.empty()) {
    if (!s.shape.empty() || !s.flag.empty()) throw invalid_argument("give either --perm or --shape/--flag, not both");
    const Permutation w = Permutation::parse(s.perm);
    if (auto pat = find_2143(w))
      throw invalid_argument("permutation " + to_string(w) + " is not vexillary (pattern at a,b,c,d=" +
                             std::to_string((*pat)[0]) + "," + std::to_string((*pat)[1]) + "," +
                             std::to_string((*pat)[2]) + "," + std::to_string((*pat)[3]) + ")");
    fp = flagged_partition_of(w);
  } else {
    if (s.shape.empty() && s.flag.empty()) throw invalid_argument("--shape and --flag are required");
    fp = FlaggedPartition(parse_int_list(s.shape, "--shape"), parse_int_list(s.flag, "--flag"));
  }
  if (s.max_rows && static_cast<long>(fp.rows()) > *s.max_rows)
    throw invalid_argument("shape has more rows than --max-rows");
  if (s.max_part && !fp.empty() && fp.lambda().front() > *s.max_part)
    throw invalid_argument("lambda_1 exceeds --max-part");
  if (s.max_flag && !fp.empty() && fp.flag().back() > *s.max_flag) throw invalid_argument("f_r exceeds --max-flag");
  if (s.max_size && fp.size() > *s.max_size) throw invalid_argument("|lambda| exceeds --max-size");
  return fp;
}

inline Polynomial specialize(const Polynomial& p, const std::vector<std::string>& specs) {
  Substitution sub;
  for (const auto& s : specs) {
    if (s == "beta=0")
      sub.beta = Integer(0);
    else if (s == "b=0")
      sub.all_b = Integer(0);
    else
      throw invalid_argument("unknown specialization '" + s + "' (beta=0, b=0)");
  }
  return specs.empty() ? p : substitute(p, sub);
}

inline Polynomial compute_by(const std::string& method, const FlaggedPartition& fp, long margin) {
  if (method == "tableau") return grothendieck_tableau(fp);
  if (method == "determinant") return grothendieck_determinant(fp, static_cast<std::size_t>(margin));
  if (method == "divdiff") return grothendieck_divdiff(fp);
  throw invalid_argument("unknown method '" + method + "' (tableau, determinant, divdiff)");
}

inline void print_polynomial(std::ostream& out, const Polynomial& p, const std::string& format) {
  if (format == "json")
    out << to_json_string(p) << "\n";
  else if (format == "latex")
    out << to_latex(p) << "\n";
  else
    out << to_string(p) << "\n";
}

inline std::string cells_text(const std::vector<GridCell>& cells) {
  std::string s = "{";
  for (std::size_t k = 0; k < cells.size(); ++k)
    s += (k ? "," : "") + std::string("(") + std::to_string(cells[k].first) + "," + std::to_string(cells[k].second) + ")";
  return s + "}";
}

inline nlohmann::json cells_json(const std::vector<GridCell>& cells) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& [p, q] : cells) a.push_back({p, q});
  return a;
}

/// First monomial where a and c differ, with both coefficients.
inline std::string first_difference(const Polynomial& a, const Polynomial& c, const std::string& na,
                                    const std::string& nc) {
  const Polynomial d = a - c;
  if (d.is_zero()) return "";
  const Monomial& m = d.terms().front().first;
  return to_string(m) + ": " + na + " " + a.coefficient(m).str() + ", " + nc + " " + c.coefficient(m).str();
}

inline int run_tableaux(const JobSpec& s, std::ostream& out) {
  const FlaggedPartition fp = job_partition(s);
  if (s.format == "latex") throw invalid_argument("tableaux: latex output is not supported");
  if (s.format == "json") {
    nlohmann::json list = nlohmann::json::array();
    for_each_tableau(fp, [&](const SetValuedTableau& t) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& row : t.cells) {
        nlohmann::json r = nlohmann::json::array();
        for (CellSet c : row) r.push_back(c.values());
        rows.push_back(r);
      }
      list.push_back(rows);
    });
    out << nlohmann::json{{"lambda", fp.lambda()}, {"flag", fp.flag()}, {"count", list.size()}, {"tableaux", list}}
               .dump()
        << "\n";
    return 0;
  }
  std::size_t count = 0;
  for_each_tableau(fp, [&](const SetValuedTableau& t) {
    out << to_string(t) << "\n";
    ++count;
  });
  out << count << (count == 1 ? " tableau" : " tableaux") << "\n";
  return 0;
}

inline int run_compute(const JobSpec& s, std::ostream& out) {
  const FlaggedPartition fp = job_partition(s);
  print_polynomial(out, specialize(compute_by(s.method, fp, s.trunc_margin), s.specializations), s.format);
  return 0;
}

inline int run_compare(const JobSpec& s, std::ostream& out) {
  const FlaggedPartition fp = job_partition(s);
  const std::vector<std::string> names{"tableau", "determinant", "divdiff"};
  std::vector<Polynomial> polys;
  for (const auto& n : names) polys.push_back(specialize(compute_by(n, fp, s.trunc_margin), s.specializations));
  bool all = true;
  nlohmann::json j{{"lambda", fp.lambda()}, {"flag", fp.flag()}};
  std::ostringstream text;
  text << to_string(fp) << "\n";
  for (std::size_t k = 0; k < names.size(); ++k) {
    text << names[k] << ": " << polys[k].size() << " terms\n";
    j["terms"][names[k]] = polys[k].size();
  }
  for (std::size_t a = 0; a < names.size(); ++a)
    for (std::size_t c = a + 1; c < names.size(); ++c) {
      const bool eq = polys[a] == polys[c];
      all = all && eq;
      const std::string key = names[a] + " = " + names[c];
      text << key << ": " << (eq ? "equal" : "DIFFERENT") << "\n";
      j["equal"][key] = eq;
      if (!eq) {
        const std::string diff = first_difference(polys[a], polys[c], names[a], names[c]);
        text << "  first difference at " << diff << "\n";
        j["first_difference"][key] = diff;
      }
    }
  j["all_equal"] = all;
  if (s.format == "json")
    out << j.dump() << "\n";
  else
    out << text.str() << (all ? "all equal" : "MISMATCH") << "\n";
  return all ? 0 : 1;
}

inline int run_perm(const JobSpec& s, std::ostream& out) {
  if (s.perm.empty()) throw invalid_argument("perm: --perm is required");
  const Permutation w = Permutation::parse(s.perm);
  const auto pat = find_2143(w);
  nlohmann::json j{{"permutation", w.one_line()}, {"length", w.inversions()}, {"code", w.code()}};
  std::ostringstream text;
  text << "permutation: " << to_string(w) << "\n";
  text << "length: " << w.inversions() << "\n";
  text << "code: " << to_string(w.code()) << "\n";
  text << "diagram: " << cells_text(diagram(w)) << "\n";
  text << "essential set: " << cells_text(essential_set(w)) << "\n";
  j["diagram"] = cells_json(diagram(w));
  j["essential_set"] = cells_json(essential_set(w));
  if (pat) {
    const std::string where = std::to_string((*pat)[0]) + "," + std::to_string((*pat)[1]) + "," +
                              std::to_string((*pat)[2]) + "," + std::to_string((*pat)[3]);
    text << "not vexillary (pattern at a,b,c,d=" << where << ")\n";
    j["vexillary"] = false;
    j["pattern"] = *pat;
  } else {
    const FlaggingSet fs = flagging_set(w);
    const FlaggedPartition fp = flagged_partition_from(fs);
    text << "vexillary\n";
    text << "flagging set: " << cells_text(fs.pairs) << "\n";
    text << to_string(fp) << "\n";
    j["vexillary"] = true;
    j["flagging_set"] = cells_json(fs.pairs);
    j["lambda"] = fp.lambda();
    j["flag"] = fp.flag();
  }
  if (s.grothendieck) {
    const Polynomial g = grothendieck_perm(w);
    if (s.format == "latex")
      text << "grothendieck: " << to_latex(g) << "\n";
    else
      text << "grothendieck: " << to_string(g) << "\n";
    j["grothendieck"] = to_json(g);
  }
  if (s.format == "json")
    out << j.dump() << "\n";
  else
    out << text.str();
  return 0;
}

inline int run_verify(const JobSpec& s, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  GridLimits limits;
  if (s.max_rows) limits.max_rows = *s.max_rows;
  if (s.max_part) limits.max_part = *s.max_part;
  if (s.max_flag) limits.max_flag = *s.max_flag;
  if (s.samples <= 0) throw invalid_argument("--samples must be positive");
  SuiteReport rep;
  if (s.suite == "operators")
    rep = verify_operators(s.seed, static_cast<std::size_t>(s.samples));
  else if (s.suite == "main")
    rep = verify_main(limits, static_cast<std::size_t>(s.trunc_margin));
  else if (s.suite == "divdiff")
    rep = verify_divdiff(limits);
  else if (s.suite == "degenerations")
    rep = verify_degenerations(limits);
  else if (s.suite == "vexillary")
    rep = verify_vexillary(s.n.value_or(4));
  else
    throw invalid_argument("unknown suite '" + s.suite + "' (operators, main, vexillary, divdiff, degenerations)");
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool over = s.time_budget && elapsed > *s.time_budget;
  if (s.format == "json") {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks)
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"failed", c.failed}, {"counterexample", c.counterexample}});
    out << nlohmann::json{{"suite", rep.suite}, {"ok", rep.ok() && !over}, {"checks", checks}}.dump() << "\n";
  } else {
    out << rep.render();
    if (over) out << "time budget exceeded\n";
  }
  return rep.ok() && !over ? 0 : 1;
}

}  // namespace detail

/// Runs a job, printing results to `out` and errors to `err`; returns the exit code.
inline int run_job(const JobSpec& s, std::ostream& out, std::ostream& err) {
  try {
    detail::check_limits(s);
    if (s.command == "tableaux") return detail::run_tableaux(s, out);
    if (s.command == "compute") return detail::run_compute(s, out);
    if (s.command == "compare") return detail::run_compare(s, out);
    if (s.command == "perm") return detail::run_perm(s, out);
    if (s.command == "verify") return detail::run_verify(s, out);
    throw invalid_argument("unknown command '" + s.command + "' (tableaux, compute, compare, perm, verify)");
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::internal_error);
  } catch (const invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::invalid_input);
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::invalid_input);
  }
}

}  // namespace ffg
