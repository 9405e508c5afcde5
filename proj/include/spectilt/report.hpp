#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>  // vendored nlohmann/json

#include "spectilt/classify.hpp"

namespace spectilt {

using Json = nlohmann::ordered_json;

inline void to_json(Json& j, const Witness& w) { j = Json{{"prime", w.prime}, {"i", w.i}, {"invariant", w.invariant}, {"value", w.value}}; }

inline void from_json(const Json& j, Witness& w) {
  j.at("prime").get_to(w.prime);
  j.at("i").get_to(w.i);
  j.at("invariant").get_to(w.invariant);
  j.at("value").get_to(w.value);
}

struct MethodResult {
  std::string method;
  bool member = true;
  std::vector<Witness> witnesses;

  friend bool operator==(const MethodResult&, const MethodResult&) = default;
};

inline void to_json(Json& j, const MethodResult& m) { j = Json{{"method", m.method}, {"member", m.member}, {"witnesses", m.witnesses}}; }

inline void from_json(const Json& j, MethodResult& m) {
  j.at("method").get_to(m.method);
  j.at("member").get_to(m.member);
  j.at("witnesses").get_to(m.witnesses);
}

/// Outcome of one session command. `verdict` is "ok" for plain
/// computations and "pass"/"fail" for checks. Timing is deliberately not
/// recorded so that reports are reproducible byte for byte.
struct Report {
  std::string command;
  std::string verdict = "ok";
  std::vector<MethodResult> method_results;
  std::vector<Witness> witnesses;
  std::vector<std::string> caveats;
  Json payload = Json::object();

  void add_caveat(const std::string& c) {
    for (auto& x : caveats)
      if (x == c) return;
    caveats.push_back(c);
  }

  friend bool operator==(const Report& a, const Report& b) {
    return a.command == b.command && a.verdict == b.verdict && a.method_results == b.method_results && a.witnesses == b.witnesses &&
           a.caveats == b.caveats && a.payload == b.payload;
  }
};

inline void to_json(Json& j, const Report& r) {
  j = Json{{"command", r.command},
           {"verdict", r.verdict},
           {"method_results", r.method_results},
           {"witnesses", r.witnesses},
           {"caveats", r.caveats},
           {"payload", r.payload}};
}

inline void from_json(const Json& j, Report& r) {
  j.at("command").get_to(r.command);
  j.at("verdict").get_to(r.verdict);
  j.at("method_results").get_to(r.method_results);
  j.at("witnesses").get_to(r.witnesses);
  j.at("caveats").get_to(r.caveats);
  r.payload = j.at("payload");
}

inline std::string emit_json(const std::vector<Report>& reports) {
  Json j = Json{{"reports", reports}};
  return j.dump(2) + "\n";
}

inline std::vector<Report> parse_json(const std::string& text) {
  return Json::parse(text).at("reports").get<std::vector<Report>>();
}

namespace detail {

inline std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

/// A payload object of the form {"columns": [...], "rows": [[...], ...]}
/// renders as an aligned table.
inline void render_table(std::ostringstream& out, const Json& t, const std::string& indent) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head;
  for (auto& c : t.at("columns")) head.push_back(scalar_text(c));
  cells.push_back(head);
  for (auto& row : t.at("rows")) {
    std::vector<std::string> r;
    for (auto& c : row) r.push_back(scalar_text(c));
    cells.push_back(r);
  }
  std::vector<std::size_t> width;
  for (auto& r : cells)
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (width.size() <= k) width.push_back(0);
      width[k] = std::max(width[k], r[k].size());
    }
  for (auto& r : cells) {
    out << indent;
    for (std::size_t k = 0; k < r.size(); ++k) {
      out << r[k];
      if (k + 1 < r.size()) out << std::string(width[k] - r[k].size() + 2, ' ');
    }
    out << "\n";
  }
}

inline bool is_table(const Json& v) { return v.is_object() && v.contains("columns") && v.contains("rows") && v.size() == 2; }

inline void render_value(std::ostringstream& out, const std::string& key, const Json& v, const std::string& indent) {
  if (is_table(v)) {
    out << indent << key << ":\n";
    render_table(out, v, indent + "  ");
  } else if (v.is_object()) {
    out << indent << key << ":\n";
    for (auto& [k, x] : v.items()) render_value(out, k, x, indent + "  ");
  } else if (v.is_array()) {
    bool flat = std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
    if (flat) {
      out << indent << key << ": [";
      for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << scalar_text(v[k]);
      out << "]\n";
    } else {
      out << indent << key << ":" << (v.empty() ? " []" : "") << "\n";
      for (std::size_t k = 0; k < v.size(); ++k) render_value(out, "- " + std::to_string(k + 1), v[k], indent + "  ");
    }
  } else {
    out << indent << key << ": " << scalar_text(v) << "\n";
  }
}

}  // namespace detail

inline std::string emit_text(const Report& r) {
  std::ostringstream out;
  out << "== " << r.command << "\n";
  out << "verdict: " << r.verdict << "\n";
  for (auto& [k, v] : r.payload.items()) detail::render_value(out, k, v, "");
  for (auto& m : r.method_results) {
    out << "method " << m.method << ": " << (m.member ? "member" : "non-member") << "\n";
    for (auto& w : m.witnesses) out << "  witness " << w.prime << " i=" << w.i << " " << w.invariant << " = " << w.value << "\n";
  }
  for (auto& w : r.witnesses) out << "witness " << w.prime << " i=" << w.i << " " << w.invariant << " = " << w.value << "\n";
  for (auto& c : r.caveats) out << "caveat: " << c << "\n";
  return out.str();
}

inline std::string emit_text(const std::vector<Report>& reports) {
  std::string s;
  for (std::size_t k = 0; k < reports.size(); ++k) s += (k ? "\n" : "") + emit_text(reports[k]);
  return s;
}

}  // namespace spectilt
