#pragma once

#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "spectilt/cmserre.hpp"
#include "spectilt/report.hpp"

namespace spectilt {

/// Source position, 1-based.
struct SrcPos {
  int line = 1;
  int column = 1;
  std::string to_string() const { return "line " + std::to_string(line) + ", column " + std::to_string(column); }
};

struct SessionOptions {
  int jobs = 1;
  std::optional<int> pd_cap;
  /// Extra degrees past the largest presentation degree for Hilbert
  /// comparisons.
  int degree_bound = 6;
  /// Seed for `suite ... = random n`; SPECTILT_SEED overrides it.
  std::uint64_t seed = 1;
};

namespace session_detail {

enum class Tok { word, string, group, equals, slash, comma };

struct Token {
  Tok kind;
  std::string text;  // word/string text, or the inside of a group
  char open = 0;     // '(' '[' '{' for groups
  SrcPos pos;
};

struct Statement {
  std::vector<Token> toks;
  SrcPos pos;
  std::string echo;  // whitespace-normalized source text
};

[[noreturn]] inline void syntax(const SrcPos& p, const std::string& msg) { throw InputError("cli.syntax", p.to_string() + ": " + msg); }

inline char closing(char open) { return open == '(' ? ')' : open == '[' ? ']' : '}'; }

/// Splits source text into statements and tokens. Brackets are captured as
/// raw groups so polynomial text needs no tokenizing here.
inline std::vector<Statement> lex(const std::string& src) {
  std::vector<Statement> out;
  Statement cur;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto start_echo = [&](const std::string& piece) {
    if (cur.toks.empty()) cur.echo.clear();
    if (!cur.echo.empty()) cur.echo += ' ';
    cur.echo += piece;
  };
  const std::string special = "=()[]{}\";,/#";
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    SrcPos pos{line, col};
    if (cur.toks.empty()) cur.pos = pos;
    if (c == ';') {
      if (!cur.toks.empty()) out.push_back(std::move(cur));
      cur = Statement{};
      advance();
      continue;
    }
    if (c == '=' || c == '/' || c == ',') {
      start_echo(std::string(1, c));
      cur.toks.push_back({c == '=' ? Tok::equals : c == '/' ? Tok::slash : Tok::comma, std::string(1, c), 0, pos});
      advance();
      continue;
    }
    if (c == '"') {
      advance();
      std::string s;
      while (i < src.size() && src[i] != '"') {
        if (src[i] == '\n') syntax(pos, "unterminated string");
        s += src[i];
        advance();
      }
      if (i >= src.size()) syntax(pos, "unterminated string");
      advance();
      start_echo("\"" + s + "\"");
      cur.toks.push_back({Tok::string, s, 0, pos});
      continue;
    }
    if (c == '(' || c == '[' || c == '{') {
      std::vector<char> stack{c};
      advance();
      std::string inner;
      while (i < src.size() && !stack.empty()) {
        char d = src[i];
        if (d == '(' || d == '[' || d == '{') stack.push_back(d);
        if (d == ')' || d == ']' || d == '}') {
          if (d != closing(stack.back()))
            syntax(SrcPos{line, col}, std::string("expected '") + closing(stack.back()) + "', found '" + d + "'");
          stack.pop_back();
          if (stack.empty()) break;
        }
        if (d == ';') syntax(SrcPos{line, col}, std::string("expected '") + closing(stack.back()) + "' before ';'");
        inner += d;
        advance();
      }
      if (stack.size() > 0 && i >= src.size()) syntax(pos, std::string("unclosed '") + c + "'");
      advance();
      start_echo(std::string(1, c) + inner + closing(c));
      cur.toks.push_back({Tok::group, inner, c, pos});
      continue;
    }
    if (c == ')' || c == ']' || c == '}') syntax(pos, std::string("unexpected '") + c + "'");
    std::string w;
    while (i < src.size() && !std::isspace(static_cast<unsigned char>(src[i])) && special.find(src[i]) == std::string::npos) {
      w += src[i];
      advance();
    }
    start_echo(w);
    cur.toks.push_back({Tok::word, w, 0, pos});
  }
  if (!cur.toks.empty()) syntax(cur.pos, "statement is missing its terminating ';'");
  return out;
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// Splits on commas at bracket depth zero.
inline std::vector<std::string> split_top(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

inline int parse_int(const std::string& s, const SrcPos& p, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    syntax(p, "expected an integer for " + what + ", found '" + s + "'");
  }
}

/// Positional arguments and --flags of a command statement.
struct Args {
  std::vector<Token> pos;
  std::map<std::string, Token> flags;
  std::set<std::string> used;

  const Token* flag(const std::string& name) {
    used.insert(name);
    auto it = flags.find(name);
    return it == flags.end() ? nullptr : &it->second;
  }
};

inline Args parse_args(const Statement& st, std::size_t from, const std::set<std::string>& switches) {
  Args a;
  for (std::size_t k = from; k < st.toks.size(); ++k) {
    const Token& t = st.toks[k];
    if (t.kind == Tok::word && t.text.rfind("--", 0) == 0) {
      std::string name = t.text.substr(2);
      if (switches.count(name)) {
        a.flags[name] = Token{Tok::word, "true", 0, t.pos};
        continue;
      }
      if (k + 1 >= st.toks.size()) syntax(t.pos, "flag --" + name + " expects a value");
      Token v = st.toks[++k];
      if (v.kind == Tok::group) v.text = v.open + v.text + closing(v.open);
      // Comma-separated word lists: M1,M2,M3.
      while (k + 2 < st.toks.size() + 1 && k + 1 < st.toks.size() && st.toks[k + 1].kind == Tok::comma) {
        if (k + 2 >= st.toks.size()) syntax(st.toks[k + 1].pos, "list ends with ','");
        v.text += "," + st.toks[k + 2].text;
        k += 2;
      }
      a.flags[name] = v;
    } else if (t.kind != Tok::comma) {
      a.pos.push_back(t);
    }
  }
  return a;
}

}  // namespace session_detail

/// Declarations and command reports of one session file.
class Session {
 public:
  explicit Session(SessionOptions opt = {}) : opt_(opt) {
    if (const char* s = std::getenv("SPECTILT_SEED")) opt_.seed = std::strtoull(s, nullptr, 10);
  }

  /// Evaluates every statement in order; stops at the first error, which
  /// is rethrown with the statement position. Reports produced before the
  /// error stay available through reports().
  void run(const std::string& text) {
    for (auto& st : session_detail::lex(text)) {
      try {
        exec(st);
      } catch (const Error& e) {
        std::string msg = e.what();
        if (msg.rfind("line ", 0) != 0) msg = st.pos.to_string() + ": " + msg;
        switch (e.kind()) {
          case ErrorKind::input: throw InputError(e.code(), msg);
          case ErrorKind::budget: throw BudgetError(e.code(), msg);
          case ErrorKind::invariant: throw InvariantError(e.code(), msg);
        }
      }
    }
  }

  const std::vector<Report>& reports() const { return reports_; }

  bool has(const std::string& name) const { return kinds_.count(name) > 0; }
  RingPtr ring(const std::string& name) const { return rings_.at(name); }
  const FpModule& module(const std::string& name) const { return modules_.at(name); }
  const Prime& prime(const std::string& name) const { return primes_.at(name); }
  const Window& window(const std::string& name) const { return windows_.at(name); }

 private:
  using Statement = session_detail::Statement;
  using Token = session_detail::Token;
  using Tok = session_detail::Tok;
  using Args = session_detail::Args;

  struct SeqDecl {
    SpecSeq seq;
    std::string window;
  };

  // -- environment ----------------------------------------------------------

  void bind(const std::string& name, const std::string& kind, const SrcPos& p) {
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
      session_detail::syntax(p, "'" + name + "' is not a valid name");
    if (kinds_.count(name)) throw InputError("cli.name", p.to_string() + ": name '" + name + "' is already bound to a " + kinds_[name]);
    kinds_[name] = kind;
  }

  template <class Map>
  auto& lookup(Map& m, const std::string& name, const std::string& kind, const SrcPos& p) {
    auto it = m.find(name);
    if (it == m.end()) {
      auto k = kinds_.find(name);
      if (k != kinds_.end())
        throw InputError("cli.name", p.to_string() + ": '" + name + "' is a " + k->second + ", expected a " + kind);
      throw InputError("cli.name", p.to_string() + ": unknown " + kind + " '" + name + "'");
    }
    return it->second;
  }

  RingPtr current_ring(const SrcPos& p) {
    if (!current_) throw InputError("cli.ring", p.to_string() + ": no ring declared yet");
    return current_;
  }

  Workspace& workspace(const RingPtr& r) {
    auto& ws = workspaces_[r.get()];
    if (!ws) ws = std::make_unique<Workspace>(r, opt_.jobs);
    return *ws;
  }

  FpModule& mod(const Token& t) {
    if (t.kind != Tok::word) session_detail::syntax(t.pos, "expected a module name");
    return lookup(modules_, t.text, "module", t.pos);
  }
  Prime& prm(const Token& t) {
    if (t.kind != Tok::word) session_detail::syntax(t.pos, "expected a prime name");
    return lookup(primes_, t.text, "prime", t.pos);
  }
  Window& win(const Token& t) { return lookup(windows_, t.text, "window", t.pos); }

  static void same_ring(const FpModule& a, const FpModule& b, const SrcPos& p) {
    if (a.ring() != b.ring()) throw InputError("cli.ring", p.to_string() + ": modules live over different rings");
  }

  const Token& positional(Args& a, std::size_t k, const Statement& st, const std::string& what) {
    if (a.pos.size() <= k) session_detail::syntax(st.pos, st.toks[0].text + ": missing " + what);
    return a.pos[k];
  }

  void no_extra(Args& a, std::size_t npos, const Statement& st) {
    if (a.pos.size() > npos) session_detail::syntax(a.pos[npos].pos, st.toks[0].text + ": unexpected argument '" + a.pos[npos].text + "'");
    for (auto& [k, v] : a.flags)
      if (!a.used.count(k)) session_detail::syntax(v.pos, st.toks[0].text + ": unknown flag --" + k);
  }

  int int_flag(Args& a, const std::string& name, int dflt) {
    const Token* t = a.flag(name);
    return t ? session_detail::parse_int(t->text, t->pos, "--" + name) : dflt;
  }

  int pd_cap(const RingPtr& r) const { return opt_.pd_cap.value_or(default_pd_cap(*r)); }

  // -- parsing helpers ------------------------------------------------------

  std::vector<Poly> polys(const RingPtr& r, const Token& g) {
    if (g.kind != Tok::group || g.open != '(') session_detail::syntax(g.pos, "expected a parenthesized generator list");
    std::vector<Poly> out;
    for (auto& s : session_detail::split_top(g.text)) {
      if (s.empty()) continue;
      try {
        out.push_back(Poly::parse(r->ambient(), s));
      } catch (const Error& e) {
        throw InputError(e.code(), g.pos.to_string() + ": in '" + s + "': " + e.what());
      }
    }
    return out;
  }

  std::vector<int> int_list(const Token& g) {
    if (g.kind != Tok::group || g.open != '[') session_detail::syntax(g.pos, "expected a bracketed integer list");
    std::vector<int> out;
    for (auto& s : session_detail::split_top(g.text)) out.push_back(session_detail::parse_int(s, g.pos, "a degree"));
    return out;
  }

  /// "Y1=p,q; Y2=q" over the window.
  SpecSeq parse_seq(const std::string& text, const Window& w, const SrcPos& p) {
    SpecSeq s;
    for (auto& part : session_detail::split_top(text, ';')) {
      if (part.empty()) continue;
      auto eq = part.find('=');
      if (eq == std::string::npos || session_detail::trim(part.substr(0, eq)).size() < 2 || (part[0] != 'Y' && part[0] != 'y'))
        session_detail::syntax(p, "sequence parts look like 'Y1=p,q', found '" + part + "'");
      int idx = session_detail::parse_int(session_detail::trim(part.substr(1, eq - 1)), p, "a sequence index");
      if (idx != s.n() + 1) session_detail::syntax(p, "sequence indices must run 1, 2, ... in order; found Y" + std::to_string(idx));
      PrimeSet y = 0;
      std::string body = session_detail::trim(part.substr(eq + 1));
      if (body.size() >= 2 && body.front() == '{' && body.back() == '}') body = body.substr(1, body.size() - 2);
      for (auto& name : session_detail::split_top(body)) {
        if (name.empty()) continue;
        int k = w.index_of(name);
        if (k < 0) {
          // Accept declared prime names whose ideal is in the window.
          auto it = primes_.find(name);
          if (it != primes_.end())
            for (int j = 0; j < w.size(); ++j)
              if (w.prime(j).ideal == it->second.ideal) k = j;
        }
        if (k < 0) throw InputError("cli.name", p.to_string() + ": prime '" + name + "' is not in window " + w.name());
        y |= PrimeSet{1} << k;
      }
      s.y.push_back(y);
    }
    if (s.n() == 0) session_detail::syntax(p, "empty sequence");
    return s;
  }

  /// A window prime by its window name, e.g. (x), or by a declared prime
  /// name whose ideal is in the window.
  int window_index(const Window& w, const Token& t) {
    int k = w.index_of(t.text);
    if (k < 0) {
      auto it = primes_.find(t.text);
      if (it != primes_.end())
        for (int j = 0; j < w.size(); ++j)
          if (w.prime(j).ideal == it->second.ideal) k = j;
    }
    if (k < 0) throw InputError("cli.name", t.pos.to_string() + ": prime '" + t.text + "' is not in window " + w.name());
    return k;
  }

  /// --seq NAME or --seq "Y1=..." --window W.
  std::pair<SpecSeq, const Window*> seq_arg(Args& a, const Statement& st) {
    const Token* t = a.flag("seq");
    if (!t) session_detail::syntax(st.pos, st.toks[0].text + ": missing --seq");
    const Token* wt = a.flag("window");
    if (t->kind == Tok::word && seqs_.count(t->text)) {
      auto& d = seqs_.at(t->text);
      if (wt && wt->text != d.window) throw InputError("cli.window", wt->pos.to_string() + ": sequence " + t->text + " is over window " + d.window);
      return {d.seq, &windows_.at(d.window)};
    }
    if (t->kind == Tok::word) lookup(seqs_, t->text, "sequence", t->pos);
    if (!wt) session_detail::syntax(t->pos, "an inline --seq needs --window");
    const Window& w = win(*wt);
    return {parse_seq(t->text, w, t->pos), &w};
  }

  std::vector<FpModule> suite_arg(const Token& t) {
    std::vector<FpModule> out;
    if (suites_.count(t.text)) {
      for (auto& n : suites_.at(t.text)) out.push_back(modules_.at(n));
      return out;
    }
    for (auto& n : session_detail::split_top(t.text)) out.push_back(lookup(modules_, n, "module", t.pos));
    return out;
  }

  // -- statements -----------------------------------------------------------

  void exec(const Statement& st) {
    const Token& head = st.toks[0];
    if (head.kind != Tok::word) session_detail::syntax(head.pos, "expected a declaration or command");
    const std::string& k = head.text;
    if (k == "ring") return decl_ring(st);
    if (k == "use") return decl_use(st);
    if (k == "prime") return decl_prime(st);
    if (k == "window") return decl_window(st);
    if (k == "module") return decl_module(st);
    if (k == "seq") return decl_seq(st);
    if (k == "suite") return decl_suite(st);
    Report r;
    r.command = st.echo;
    Args a = session_detail::parse_args(st, 1, {"minimal", "json"});
    static const std::map<std::string, void (Session::*)(const Statement&, Args&, Report&)> commands = {
        {"resolve", &Session::cmd_resolve},
        {"ext", &Session::cmd_ext},
        {"tor", &Session::cmd_tor},
        {"bass", &Session::cmd_bass},
        {"pd", &Session::cmd_pd},
        {"depth", &Session::cmd_depth},
        {"dim", &Session::cmd_dim},
        {"hilbert", &Session::cmd_hilbert},
        {"ass", &Session::cmd_ass},
        {"supp", &Session::cmd_ass},
        {"torsion", &Session::cmd_torsion},
        {"syzygy", &Session::cmd_syzygy},
        {"transpose", &Session::cmd_transpose},
        {"lp", &Session::cmd_lp},
        {"functor-check", &Session::cmd_functor},
        {"validate-sequence", &Session::cmd_validate},
        {"enumerate", &Session::cmd_enumerate},
        {"membership", &Session::cmd_membership},
        {"generators", &Session::cmd_generators},
        {"shift-check", &Session::cmd_shift},
        {"same-class", &Session::cmd_same_class},
        {"cm", &Session::cmd_cm},
        {"cm-translate", &Session::cmd_cm_translate},
        {"chi", &Session::cmd_chi},
        {"serre", &Session::cmd_serre},
        {"hochster", &Session::cmd_hochster},
    };
    auto it = commands.find(k);
    if (it == commands.end()) {
      std::string expected = "ring, use, prime, window, module, seq, suite";
      for (auto& [name, fn] : commands) expected += ", " + name;
      session_detail::syntax(head.pos, "unknown statement '" + k + "'; expected one of: " + expected);
    }
    (this->*(it->second))(st, a, r);
    reports_.push_back(std::move(r));
  }

  void expect_eq(const Statement& st, std::size_t k) {
    if (st.toks.size() <= k || st.toks[k].kind != Tok::equals)
      session_detail::syntax(st.toks.size() > k ? st.toks[k].pos : st.pos, st.toks[0].text + " declarations look like '" + st.toks[0].text + " NAME = ...'");
  }

  const Token& tok(const Statement& st, std::size_t k, const std::string& what) {
    if (st.toks.size() <= k) session_detail::syntax(st.pos, st.toks[0].text + ": missing " + what);
    return st.toks[k];
  }

  // ring R = QQ[x,y] / (x^2, x*y) [gorenstein];   ring S = GF(7)[x,y];
  void decl_ring(const Statement& st) {
    const Token& name = tok(st, 1, "ring name");
    expect_eq(st, 2);
    std::size_t k = 3;
    const Token& fld = tok(st, k++, "coefficient field (QQ or GF(p))");
    Field field = Field::rationals();
    if (fld.text == "GF") {
      const Token& p = tok(st, k++, "characteristic");
      if (p.kind != Tok::group || p.open != '(') session_detail::syntax(p.pos, "expected GF(p)");
      int ch = session_detail::parse_int(session_detail::trim(p.text), p.pos, "the characteristic");
      if (ch < 2) session_detail::syntax(p.pos, "characteristic must be a prime");
      for (int d = 2; d * d <= ch; ++d)
        if (ch % d == 0) session_detail::syntax(p.pos, "characteristic " + std::to_string(ch) + " is not prime");
      field = Field::prime(ch);
    } else if (fld.text != "QQ") {
      session_detail::syntax(fld.pos, "expected QQ or GF(p), found '" + fld.text + "'");
    }
    const Token& vars = tok(st, k++, "variable list");
    if (vars.kind != Tok::group || vars.open != '[') session_detail::syntax(vars.pos, "expected a variable list like [x,y]");
    std::vector<std::string> names;
    for (auto& v : session_detail::split_top(vars.text)) {
      if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0]))) session_detail::syntax(vars.pos, "bad variable name '" + v + "'");
      names.push_back(v);
    }
    std::vector<std::string> rels;
    const Token* relpos = nullptr;
    if (k < st.toks.size() && st.toks[k].kind == Tok::slash) {
      relpos = &tok(st, k + 1, "defining ideal");
      if (relpos->kind != Tok::group || relpos->open != '(') session_detail::syntax(relpos->pos, "expected '(...)' after '/'");
      for (auto& s : session_detail::split_top(relpos->text))
        if (!s.empty()) rels.push_back(s);
      k += 2;
    }
    bool gor = false;
    if (k < st.toks.size() && st.toks[k].text == "gorenstein") {
      gor = true;
      ++k;
    }
    if (k < st.toks.size()) session_detail::syntax(st.toks[k].pos, "unexpected '" + st.toks[k].text + "' in ring declaration");
    bind(name.text, "ring", name.pos);
    try {
      rings_[name.text] = make_ring(field, names, rels, name.text, gor);
    } catch (const Error& e) {
      kinds_.erase(name.text);
      throw InputError(e.code(), (relpos ? relpos->pos : vars.pos).to_string() + ": " + e.what());
    }
    current_ = rings_[name.text];
  }

  void decl_use(const Statement& st) {
    const Token& name = tok(st, 1, "ring name");
    current_ = lookup(rings_, name.text, "ring", name.pos);
    if (st.toks.size() > 2) session_detail::syntax(st.toks[2].pos, "use takes one ring name");
  }

  // prime p = (x, y) [certify|assert] [height N];
  void decl_prime(const Statement& st) {
    const Token& name = tok(st, 1, "prime name");
    expect_eq(st, 2);
    auto r = current_ring(st.pos);
    auto gens = polys(r, tok(st, 3, "generators"));
    PrimeMode mode = PrimeMode::prove;
    std::optional<int> height;
    for (std::size_t k = 4; k < st.toks.size(); ++k) {
      const auto& t = st.toks[k];
      if (t.text == "certify") {
        mode = PrimeMode::prove;
      } else if (t.text == "assert") {
        mode = PrimeMode::assert_prime;
      } else if (t.text == "height") {
        height = session_detail::parse_int(tok(st, ++k, "height value").text, t.pos, "height");
      } else {
        session_detail::syntax(t.pos, "expected certify, assert or height, found '" + t.text + "'");
      }
    }
    auto p = declare_prime(r, gens, mode, name.text, height);
    bind(name.text, "prime", name.pos);
    primes_.emplace(name.text, std::move(p));
  }

  // window W = monomial;   window W = {p, q};
  void decl_window(const Statement& st) {
    const Token& name = tok(st, 1, "window name");
    expect_eq(st, 2);
    auto r = current_ring(st.pos);
    const Token& body = tok(st, 3, "window contents");
    if (st.toks.size() > 4) session_detail::syntax(st.toks[4].pos, "unexpected tokens after window contents");
    Window w;
    if (body.kind == Tok::word && body.text == "monomial") {
      w = monomial_window(r, name.text);
    } else if (body.kind == Tok::group && body.open == '{') {
      std::vector<Prime> ps;
      for (auto& n : session_detail::split_top(body.text)) {
        Prime p = lookup(primes_, n, "prime", body.pos);
        if (p.ideal.ring() != r->ambient()) throw InputError("cli.ring", body.pos.to_string() + ": prime " + n + " belongs to another ring");
        ps.push_back(std::move(p));
      }
      w = Window(r, std::move(ps), name.text);
    } else {
      session_detail::syntax(body.pos, "expected 'monomial' or a prime list {p, q, ...}");
    }
    bind(name.text, "window", name.pos);
    windows_.emplace(name.text, std::move(w));
  }

  // seq S = "Y1=p,q; Y2=q" over W;
  void decl_seq(const Statement& st) {
    const Token& name = tok(st, 1, "sequence name");
    expect_eq(st, 2);
    const Token& body = tok(st, 3, "sequence text");
    if (body.kind != Tok::string) session_detail::syntax(body.pos, "expected a quoted sequence like \"Y1=p,q; Y2=q\"");
    if (st.toks.size() != 6 || st.toks[4].text != "over") session_detail::syntax(st.pos, "sequence declarations end with 'over WINDOW'");
    const Window& w = win(st.toks[5]);
    auto s = parse_seq(body.text, w, body.pos);
    bind(name.text, "sequence", name.pos);
    seqs_.emplace(name.text, SeqDecl{s, w.name()});
  }

  // suite U = {M, N};   suite U = random 12;
  void decl_suite(const Statement& st) {
    const Token& name = tok(st, 1, "suite name");
    expect_eq(st, 2);
    const Token& body = tok(st, 3, "suite contents");
    std::vector<std::string> members;
    if (body.kind == Tok::group && body.open == '{') {
      for (auto& n : session_detail::split_top(body.text)) {
        lookup(modules_, n, "module", body.pos);
        members.push_back(n);
      }
    } else if (body.text == "random") {
      int count = session_detail::parse_int(tok(st, 4, "suite size").text, st.toks[4].pos, "suite size");
      auto r = current_ring(st.pos);
      std::mt19937_64 rng(opt_.seed);
      for (int k = 0; k < count; ++k) {
        std::string mname = name.text + "_" + std::to_string(k + 1);
        bind(mname, "module", body.pos);
        modules_.emplace(mname, random_module(r, rng));
        members.push_back(mname);
      }
    } else {
      session_detail::syntax(body.pos, "expected {M, N, ...} or 'random COUNT'");
    }
    bind(name.text, "suite", name.pos);
    suites_.emplace(name.text, std::move(members));
  }

  /// A quotient by one to three random monomials, occasionally summed with
  /// a second one. Depends only on the generator state.
  static FpModule random_module(const RingPtr& r, std::mt19937_64& rng) {
    const int n = r->nvars();
    auto one = [&] {
      std::uniform_int_distribution<int> count(1, 3), deg(1, 3), var(0, n - 1);
      std::vector<Poly> gens;
      int c = count(rng);
      for (int k = 0; k < c; ++k) {
        Poly m = Poly::one(r->ambient());
        int d = deg(rng);
        for (int e = 0; e < d; ++e) m = m * Poly::variable(r->ambient(), var(rng));
        gens.push_back(m);
      }
      return FpModule::cyclic(r, gens);
    };
    FpModule m = one();
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) m = direct_sum(m, one());
    return m;
  }

  // module M = coker [[...], ...] degrees [...] | R/(...) | free [...] |
  //            zero | residue | syzygy M i | transpose M | lp p | twist M s |
  //            sum M N | ext i M N | tor i M N | torsion-free M ...
  void decl_module(const Statement& st) {
    const Token& name = tok(st, 1, "module name");
    expect_eq(st, 2);
    const Token& kind = tok(st, 3, "module description");
    FpModule m;
    auto need_end = [&](std::size_t n) {
      if (st.toks.size() > n) session_detail::syntax(st.toks[n].pos, "unexpected '" + st.toks[n].text + "' in module declaration");
    };
    if (kind.kind == Tok::word && kind.text == "coker") {
      auto r = current_ring(st.pos);
      const Token& mat = tok(st, 4, "relation matrix");
      if (mat.kind != Tok::group || mat.open != '[') session_detail::syntax(mat.pos, "expected a relation matrix [[...], ...]");
      Matrix rows;
      for (auto& row : session_detail::split_top(mat.text)) {
        if (row.empty()) continue;
        if (row.front() != '[' || row.back() != ']') session_detail::syntax(mat.pos, "matrix rows look like [f, g, ...]");
        DVec v;
        for (auto& e : session_detail::split_top(row.substr(1, row.size() - 2))) {
          try {
            v.push_back(Poly::parse(r->ambient(), e.empty() ? "0" : e));
          } catch (const Error& err) {
            throw InputError(err.code(), mat.pos.to_string() + ": in '" + e + "': " + err.what());
          }
        }
        rows.push_back(std::move(v));
      }
      std::vector<int> degs;
      if (st.toks.size() > 5) {
        if (st.toks[5].text != "degrees") session_detail::syntax(st.toks[5].pos, "expected 'degrees [...]'");
        degs = int_list(tok(st, 6, "degree list"));
        need_end(7);
      } else {
        degs.assign(rows.empty() ? 0 : rows[0].size(), 0);
      }
      try {
        m = FpModule(r, degs, rows);
      } catch (const Error& e) {
        throw InputError(e.code(), mat.pos.to_string() + ": " + e.what());
      }
    } else if (kind.kind == Tok::word && rings_.count(kind.text) && st.toks.size() > 4 && st.toks[4].kind == Tok::slash) {
      auto r = rings_.at(kind.text);
      m = FpModule::cyclic(r, polys(r, tok(st, 5, "ideal")));
      need_end(6);
    } else if (kind.text == "free") {
      auto r = current_ring(st.pos);
      const Token& d = tok(st, 4, "degree list or rank");
      m = d.kind == Tok::group ? FpModule::free(r, int_list(d)) : FpModule::free(r, session_detail::parse_int(d.text, d.pos, "rank"));
      need_end(5);
    } else if (kind.text == "zero") {
      m = FpModule::zero(current_ring(st.pos));
      need_end(4);
    } else if (kind.text == "residue") {
      m = residue_field(current_ring(st.pos));
      need_end(4);
    } else if (kind.text == "syzygy") {
      const FpModule& src = mod(tok(st, 4, "module"));
      m = workspace(src.ring()).syzygy(src, session_detail::parse_int(tok(st, 5, "index").text, st.toks[5].pos, "syzygy index"));
      need_end(6);
    } else if (kind.text == "transpose") {
      m = transpose(mod(tok(st, 4, "module"))).module;
      need_end(5);
    } else if (kind.text == "lp") {
      const Prime& p = prm(tok(st, 4, "prime"));
      m = workspace(ring_of(p, st.pos)).lp(p);
      need_end(5);
    } else if (kind.text == "quotient") {
      const Prime& p = prm(tok(st, 4, "prime"));
      m = FpModule::quotient(ring_of(p, st.pos), p.ideal);
      need_end(5);
    } else if (kind.text == "twist") {
      const FpModule& src = mod(tok(st, 4, "module"));
      m = src.twist(session_detail::parse_int(tok(st, 5, "shift").text, st.toks[5].pos, "twist"));
      need_end(6);
    } else if (kind.text == "sum") {
      const FpModule& a = mod(tok(st, 4, "module"));
      const FpModule& b = mod(tok(st, 5, "module"));
      same_ring(a, b, st.pos);
      m = direct_sum(a, b);
      need_end(6);
    } else if (kind.text == "ext" || kind.text == "tor") {
      int i = session_detail::parse_int(tok(st, 4, "index").text, st.toks[4].pos, "index");
      const FpModule& a = mod(tok(st, 5, "module"));
      const FpModule& b = mod(tok(st, 6, "module"));
      same_ring(a, b, st.pos);
      m = kind.text == "ext" ? workspace(a.ring()).ext(i, a, b) : workspace(a.ring()).tor(i, a, b);
      need_end(7);
    } else {
      session_detail::syntax(kind.pos, "expected one of: coker, RING/(...), free, zero, residue, quotient, syzygy, transpose, lp, twist, sum, ext, tor");
    }
    bind(name.text, "module", name.pos);
    modules_.emplace(name.text, std::move(m));
  }

  RingPtr ring_of(const Prime& p, const SrcPos& pos) {
    for (auto& [n, r] : rings_)
      if (r->ambient() == p.ideal.ring()) return r;
    throw InvariantError("cli.ring", pos.to_string() + ": prime " + p.name + " has no ring");
  }

  // -- commands -------------------------------------------------------------

  static Json betti_json(const Complex& c) {
    Json rows = Json::array();
    for (int i = 0; i <= c.length(); ++i) {
      auto d = c.degrees[i];
      std::sort(d.begin(), d.end());
      std::string s;
      for (std::size_t k = 0; k < d.size(); ++k) s += (k ? " " : "") + std::to_string(d[k]);
      rows.push_back(Json::array({i, static_cast<int>(d.size()), s}));
    }
    return Json{{"columns", {"i", "rank", "degrees"}}, {"rows", rows}};
  }

  static Json module_json(const FpModule& m) {
    FpModule p = prune(m);
    Json j{{"presentation", p.to_string()}, {"generators", p.ngens()}, {"zero", p.is_zero()}};
    if (auto len = length(p)) j["length"] = *len;
    return j;
  }

  void cmd_resolve(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "module"));
    int len = int_flag(a, "length", pd_cap(m.ring()));
    no_extra(a, 1, st);
    auto c = free_resolution(m, len, true, true);
    r.payload["betti"] = betti_json(c);
    r.payload["complete"] = c.complete;
    if (!c.complete) r.add_caveat("resolution truncated at length " + std::to_string(len));
  }

  void cmd_ext(const Statement& st, Args& a, Report& r) { cmd_ext_tor(st, a, r, true); }
  void cmd_tor(const Statement& st, Args& a, Report& r) { cmd_ext_tor(st, a, r, false); }

  void cmd_ext_tor(const Statement& st, Args& a, Report& r, bool ext) {
    int i = session_detail::parse_int(positional(a, 0, st, "index").text, a.pos[0].pos, "index");
    const FpModule& m = mod(positional(a, 1, st, "first module"));
    const FpModule& n = mod(positional(a, 2, st, "second module"));
    no_extra(a, 3, st);
    same_ring(m, n, st.pos);
    auto& ws = workspace(m.ring());
    r.payload = module_json(ext ? ws.ext(i, m, n) : ws.tor(i, m, n));
  }

  // bass p M --max k   or   bass W M --max k (whole window table)
  void cmd_bass(const Statement& st, Args& a, Report& r) {
    const Token& first = positional(a, 0, st, "prime or window");
    const FpModule& m = mod(positional(a, 1, st, "module"));
    int top = int_flag(a, "max", 2);
    no_extra(a, 2, st);
    auto& ws = workspace(m.ring());
    std::vector<const Prime*> ps;
    if (windows_.count(first.text)) {
      for (auto& p : windows_.at(first.text).primes()) ps.push_back(&p);
    } else {
      ps.push_back(&prm(first));
    }
    Json cols = Json::array({"prime"});
    for (int i = 0; i <= top; ++i) cols.push_back("mu_" + std::to_string(i));
    Json rows = Json::array();
    std::vector<std::vector<int>> vals(ps.size(), std::vector<int>(top + 1));
    parallel_for(opt_.jobs, static_cast<int>(ps.size()) * (top + 1), [&](int k) {
      int pi = k / (top + 1), i = k % (top + 1);
      vals[pi][i] = ws.bass(i, *ps[pi], m);
    });
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
      Json row = Json::array({ps[pi]->name});
      for (int v : vals[pi]) row.push_back(v);
      rows.push_back(row);
      if (!ps[pi]->is_proven()) r.add_caveat("primality of " + ps[pi]->name + " asserted, not proven");
    }
    r.payload["bass"] = Json{{"columns", cols}, {"rows", rows}};
  }

  void cmd_pd(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "module"));
    int cap = int_flag(a, "cap", pd_cap(m.ring()));
    no_extra(a, 1, st);
    auto d = pd(m, cap);
    r.payload["pd"] = d.to_string();
    r.payload["exact"] = d.exact;
    if (!d.exact) r.add_caveat("resolution did not terminate within cap " + std::to_string(cap));
  }

  void cmd_depth(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "module"));
    no_extra(a, 1, st);
    r.payload["depth"] = depth(m);
    r.add_caveat("graded-local: evaluated at the graded maximal ideal");
  }

  void cmd_dim(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "module"));
    no_extra(a, 1, st);
    r.payload["dim"] = dim_module(m);
    if (auto len = length(m)) r.payload["length"] = *len;
  }

  void cmd_hilbert(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "module"));
    int lo = int_flag(a, "from", 0);
    int hi = int_flag(a, "to", max_presentation_degree(m) + opt_.degree_bound);
    no_extra(a, 1, st);
    Json rows = Json::array();
    auto v = hilbert_values(m, lo, hi);
    for (int d = lo; d <= hi; ++d) rows.push_back(Json::array({d, v[d - lo]}));
    r.payload["hilbert"] = Json{{"columns", {"degree", "dim"}}, {"rows", rows}};
  }

  void cmd_ass(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "module"));
    const Token* wt = a.flag("window");
    if (!wt) session_detail::syntax(st.pos, st.toks[0].text + ": missing --window");
    const Window& w = win(*wt);
    no_extra(a, 1, st);
    bool ass = st.toks[0].text == "ass";
    r.payload[ass ? "ass" : "supp"] = w.set_names(ass ? ass_in_window(m, w) : supp_in_window(m, w));
    r.add_caveat("window-relative");
  }

  // torsion M --window W --set "p,q"
  void cmd_torsion(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "module"));
    const Token* wt = a.flag("window");
    const Token* set = a.flag("set");
    if (!wt || !set) session_detail::syntax(st.pos, "torsion needs --window and --set");
    const Window& w = win(*wt);
    no_extra(a, 1, st);
    PrimeSet y = parse_seq("Y1=" + set->text, w, set->pos)[1];
    PrimeSet closed = spec_closure(w, y);
    if (closed != y) r.add_caveat("set closed under specialization to " + w.set_to_string(closed));
    auto s = torsion_part(m, w, closed);
    r.payload["torsion"] = module_json(s.torsion);
    r.payload["torsion_free"] = module_json(s.torsion_free);
  }

  void cmd_syzygy(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "module"));
    int i = session_detail::parse_int(positional(a, 1, st, "index").text, a.pos[1].pos, "syzygy index");
    no_extra(a, 2, st);
    r.payload = module_json(workspace(m.ring()).syzygy(m, i));
  }

  void cmd_transpose(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "module"));
    no_extra(a, 1, st);
    auto t = transpose(m);
    r.payload = module_json(t.module);
    r.payload["minimality"] = t.canonical ? "canonical" : "up-to-projectives";
    r.payload["source"] = t.source.to_string();
  }

  void cmd_lp(const Statement& st, Args& a, Report& r) {
    const Prime& p = prm(positional(a, 0, st, "prime"));
    const Token* wt = a.flag("window");
    no_extra(a, 1, st);
    auto ring = ring_of(p, st.pos);
    auto l = workspace(ring).lp(p);
    r.payload = module_json(l);
    r.payload["pd"] = pd(l, pd_cap(ring)).to_string();
    r.payload["height"] = p.height;
    if (wt) {
      const Window& w = win(*wt);
      r.payload["ass"] = w.set_names(ass_in_window(l, w));
      r.payload["ass_R"] = w.set_names(ass_in_window(FpModule::free(ring, 1), w));
      r.add_caveat("window-relative");
    }
  }

  void cmd_functor(const Statement& st, Args& a, Report& r) {
    const FpModule& u = mod(positional(a, 0, st, "module U"));
    int n = int_flag(a, "n", 1);
    const Token* s = a.flag("suite");
    if (!s) session_detail::syntax(st.pos, "functor-check needs --suite");
    auto suite = suite_arg(*s);
    no_extra(a, 1, st);
    for (auto& m : suite) same_ring(u, m, st.pos);
    auto c = functor_iso_check(u, n, suite, opt_.degree_bound);
    r.verdict = c.ok() ? "pass" : "fail";
    r.payload["n"] = n;
    r.payload["tr_omega"] = prune(c.tr).to_string();
    r.payload["compared"] = c.compared;
    Json mm = Json::array();
    for (auto& x : c.mismatches) mm.push_back(Json{{"module", x.module_index}, {"pair", x.pair}, {"degree", x.degree}, {"lhs", x.lhs}, {"rhs", x.rhs}});
    r.payload["mismatches"] = mm;
    r.add_caveat("Betti/Hilbert-equal up to max presentation degree + " + std::to_string(opt_.degree_bound));
  }

  void cmd_validate(const Statement& st, Args& a, Report& r) {
    auto [seq, w] = seq_arg(a, st);
    no_extra(a, 0, st);
    auto rep = validate_sequence(seq, *w, workspace(w->ring()));
    r.verdict = rep.valid() ? "pass" : "fail";
    r.payload["sequence"] = seq.to_string(*w);
    r.payload["conditions"] = Json{{"specialization_closed", rep.specialization_closed},
                                   {"descending", rep.descending},
                                   {"bass_condition", rep.bass_condition},
                                   {"height_condition", rep.height_condition},
                                   {"conditions_agree", rep.gorenstein_diagnostic()}};
    r.witnesses = rep.witnesses;
    r.add_caveat("window-relative");
  }

  static Json seq_json(const SpecSeq& s, const Window& w) {
    Json ys = Json::array();
    for (auto y : s.y) ys.push_back(w.set_names(y));
    return ys;
  }

  void cmd_enumerate(const Statement& st, Args& a, Report& r) {
    int n = int_flag(a, "n", 1);
    const Token* wt = a.flag("window");
    if (!wt) session_detail::syntax(st.pos, "enumerate needs --window");
    const Window& w = win(*wt);
    no_extra(a, 0, st);
    auto e = enumerate_sequences(n, w, workspace(w.ring()));
    r.payload["n"] = n;
    r.payload["window"] = w.name();
    r.payload["count"] = e.sequences.size();
    Json seqs = Json::array();
    for (auto& s : e.sequences) seqs.push_back(s.to_string(w));
    r.payload["sequences"] = seqs;
    Json counts = Json::array();
    for (auto& [y, c] : e.counts_by_last) counts.push_back(Json::array({w.set_to_string(y), c}));
    r.payload["counts_by_last"] = Json{{"columns", {"Y_n", "sequences"}}, {"rows", counts}};
    r.add_caveat("window-relative");
  }

  void cmd_membership(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "module"));
    auto [seq, w] = seq_arg(a, st);
    std::string side = a.flag("side") ? a.flag("side")->text : "cotilting";
    std::string method = a.flag("method") ? a.flag("method")->text : "all";
    MembershipOptions opt;
    opt.minimal_primes = a.flag("minimal") != nullptr;
    if (const Token* loc = a.flag("localize")) {
      opt.localize_at = window_index(*w, *loc);
    }
    no_extra(a, 1, st);
    if (m.ring() != w->ring()) throw InputError("cli.ring", st.pos.to_string() + ": module and window live over different rings");
    auto& ws = workspace(m.ring());
    std::vector<MembershipVerdict> verdicts;
    if (side == "cotilting") {
      std::vector<CotiltMethod> ms;
      if (method == "all") {
        ms = {CotiltMethod::bass, CotiltMethod::ext, CotiltMethod::tor_transpose};
        if (ws.gorenstein()) ms.push_back(CotiltMethod::gorenstein_L);
      } else if (auto x = parse_cotilt_method(method)) {
        ms = {*x};
      } else {
        session_detail::syntax(a.flags.at("method").pos, "unknown cotilting method '" + method + "'; expected all, bass, ext, tor-transpose or gorenstein-L");
      }
      verdicts.resize(ms.size());
      parallel_for(opt_.jobs, static_cast<int>(ms.size()), [&](int k) { verdicts[k] = cotilting_membership(m, seq, *w, ms[k], ws, opt); });
    } else if (side == "tilting") {
      std::vector<TiltMethod> ms;
      if (method == "all") {
        ms = {TiltMethod::tor, TiltMethod::ext_transpose};
        if (seq.n() == 1) ms.push_back(TiltMethod::divisibility);
        if (ws.gorenstein()) ms.push_back(TiltMethod::gorenstein_L);
      } else if (auto x = parse_tilt_method(method)) {
        ms = {*x};
      } else {
        session_detail::syntax(a.flags.at("method").pos, "unknown tilting method '" + method + "'; expected all, tor, ext-transpose, divisibility or gorenstein-L");
      }
      verdicts.resize(ms.size());
      parallel_for(opt_.jobs, static_cast<int>(ms.size()), [&](int k) { verdicts[k] = tilting_membership(m, seq, *w, ms[k], ws, opt); });
    } else {
      session_detail::syntax(a.flags.at("side").pos, "--side is cotilting or tilting");
    }
    bool member = verdicts.front().member;
    bool consistent = true;
    for (auto& v : verdicts) {
      r.method_results.push_back({v.method, v.member, v.witnesses});
      consistent = consistent && v.member == member;
      for (auto& c : v.caveats) r.add_caveat(c);
    }
    r.witnesses = verdicts.front().witnesses;
    r.payload["side"] = side;
    r.payload["sequence"] = seq.to_string(*w);
    if (!consistent)
      throw InvariantError("classify.equivalence", "membership methods disagree on " + seq.to_string(*w) + " for " + m.to_string());
    r.verdict = member ? "member" : "non-member";
  }

  void cmd_generators(const Statement& st, Args& a, Report& r) {
    auto [seq, w] = seq_arg(a, st);
    no_extra(a, 0, st);
    auto gens = resolving_generators(seq, *w, workspace(w->ring()));
    Json rows = Json::array();
    for (auto& g : gens) rows.push_back(Json::array({g.label, prune(g.module).to_string(), g.pd.to_string()}));
    r.payload["sequence"] = seq.to_string(*w);
    r.payload["generators"] = Json{{"columns", {"generator", "presentation", "pd"}}, {"rows", rows}};
  }

  void cmd_shift(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "module"));
    auto [seq, w] = seq_arg(a, st);
    int j = int_flag(a, "j", 2);
    no_extra(a, 1, st);
    auto s = shift_check(m, seq, j, *w, workspace(m.ring()));
    r.verdict = s.agree() ? "pass" : "fail";
    r.payload["j"] = j;
    r.payload["syzygy_side"] = s.syzygy_side.member;
    r.payload["truncated_side"] = s.truncated_side.member;
    r.method_results.push_back({"syzygy-side", s.syzygy_side.member, s.syzygy_side.witnesses});
    r.method_results.push_back({"truncated-side", s.truncated_side.member, s.truncated_side.witnesses});
  }

  // same-class A B --top n --suite S
  void cmd_same_class(const Statement& st, Args& a, Report& r) {
    const FpModule& x = mod(positional(a, 0, st, "first generator"));
    const FpModule& y = mod(positional(a, 1, st, "second generator"));
    int top = int_flag(a, "top", 1);
    const Token* s = a.flag("suite");
    if (!s) session_detail::syntax(st.pos, "same-class needs --suite");
    auto suite = suite_arg(*s);
    no_extra(a, 2, st);
    same_ring(x, y, st.pos);
    auto c = same_class_check(ext_perp(x, top), ext_perp(y, top), suite, workspace(x.ring()));
    r.verdict = c.agree() ? "pass" : "fail";
    r.payload["mismatches"] = c.mismatches;
    r.add_caveat("Ext-vanishing class equality on the suite only");
  }

  void cmd_cm(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "module"));
    no_extra(a, 1, st);
    r.payload["depth"] = depth(m);
    r.payload["dim"] = dim_module(m);
    r.payload["cohen_macaulay"] = is_cohen_macaulay(m);
    r.add_caveat("graded-local: evaluated at the graded maximal ideal");
  }

  void cmd_cm_translate(const Statement& st, Args& a, Report& r) {
    const Prime& p = prm(positional(a, 0, st, "prime"));
    no_extra(a, 1, st);
    auto c = cm_translate_check(p, ring_of(p, st.pos));
    r.verdict = c.holds() ? "pass" : "fail";
    r.payload["pd"] = c.pd.to_string();
    r.payload["height"] = c.height;
    r.payload["cohen_macaulay"] = c.cohen_macaulay;
  }

  static Json chi_json(const ChiResult& c) { return Json{{"chi", c.value}, {"tor_lengths", c.tor_lengths}}; }

  void cmd_chi(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "first module"));
    const FpModule& n = mod(positional(a, 1, st, "second module"));
    no_extra(a, 2, st);
    same_ring(m, n, st.pos);
    r.payload = chi_json(chi(m, n));
  }

  void cmd_serre(const Statement& st, Args& a, Report& r) {
    const FpModule& m = mod(positional(a, 0, st, "first module"));
    const FpModule& n = mod(positional(a, 1, st, "second module"));
    no_extra(a, 2, st);
    same_ring(m, n, st.pos);
    auto s = serre_check(m, n);
    r.verdict = s.passed() ? "pass" : "fail";
    r.payload = chi_json(s.chi);
    r.payload["dims"] = Json::array({s.dim_m, s.dim_n, s.dim_r});
    r.payload["dimension_inequality"] = s.dimension_inequality;
    r.payload["vanishing_case"] = s.vanishing_case;
    r.payload["positivity_case"] = s.positivity_case;
  }

  void cmd_hochster(const Statement& st, Args& a, Report& r) {
    const Prime& p = prm(positional(a, 0, st, "prime"));
    const FpModule& k = mod(positional(a, 1, st, "candidate module"));
    const Token* wt = a.flag("window");
    if (!wt) session_detail::syntax(st.pos, "hochster needs --window");
    const Window& w = win(*wt);
    std::vector<FpModule> suite;
    if (const Token* s = a.flag("suite")) suite = suite_arg(*s);
    no_extra(a, 2, st);
    int idx = window_index(w, a.pos[0]);
    auto h = hochster_probe(idx, k, w, suite, workspace(k.ring()));
    r.verdict = h.passed() ? "pass" : "fail";
    r.payload["pd"] = h.pd.to_string();
    r.payload["height"] = h.height;
    r.payload["ass"] = w.set_names(h.ass);
    r.payload["cohen_macaulay"] = h.cohen_macaulay;
    if (h.class_check) {
      r.payload["class_check"] = h.class_check->agree() ? "pass" : "fail";
      r.payload["class_mismatches"] = h.class_check->mismatches;
    }
    r.add_caveat("window-relative");
    r.add_caveat("graded-local: evaluated at the graded maximal ideal");
  }

  SessionOptions opt_;
  RingPtr current_;
  std::map<std::string, std::string> kinds_;
  std::map<std::string, RingPtr> rings_;
  std::map<std::string, Prime> primes_;
  std::map<std::string, Window> windows_;
  std::map<std::string, FpModule> modules_;
  std::map<std::string, SeqDecl> seqs_;
  std::map<std::string, std::vector<std::string>> suites_;
  std::map<const Ring*, std::unique_ptr<Workspace>> workspaces_;
  std::vector<Report> reports_;
};

}  // namespace spectilt
