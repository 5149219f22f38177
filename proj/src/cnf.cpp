#include "naeenum/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "naeenum/errors.hpp"

namespace naeenum {

Clause::Clause(std::vector<Literal> literals) : lits_(std::move(literals)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (lits_[i].var <= 0) throw Error("clause literal with non-positive variable");
    if (i > 0 && lits_[i].var == lits_[i - 1].var)
      throw Error("tautological clause on variable " + std::to_string(lits_[i].var));
  }
}

Clause Clause::from_dimacs(std::initializer_list<int> lits) {
  std::vector<Literal> v;
  v.reserve(lits.size());
  for (int l : lits) v.push_back(Literal::from_dimacs(l));
  return Clause(std::move(v));
}

bool Clause::monotone() const {
  return !lits_.empty() &&
         std::none_of(lits_.begin(), lits_.end(), [](Literal l) { return l.negated; });
}

Clause Clause::negation() const {
  Clause c;
  c.lits_.reserve(lits_.size());
  for (Literal l : lits_) c.lits_.push_back(~l);
  return c;  // same variable order, so still canonical
}

std::vector<int> Clause::vars() const {
  std::vector<int> v;
  v.reserve(lits_.size());
  for (Literal l : lits_) v.push_back(l.var);
  return v;
}

VarMask Clause::positive_mask() const {
  VarMask m = 0;
  for (Literal l : lits_)
    if (!l.negated) m |= var_bit(l.var);
  return m;
}

VarMask Clause::negative_mask() const {
  VarMask m = 0;
  for (Literal l : lits_)
    if (l.negated) m |= var_bit(l.var);
  return m;
}

std::string Clause::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(lits_[i].dimacs());
  }
  return s + ")";
}

Formula::Formula(int num_vars, std::vector<Clause> clauses) : n_(num_vars), clauses_(std::move(clauses)) {
  if (n_ < 0) throw Error("negative variable count");
  for (const Clause& c : clauses_)
    for (Literal l : c.literals())
      if (l.var > n_)
        throw Error("variable " + std::to_string(l.var) + " exceeds declared n=" + std::to_string(n_));
  std::sort(clauses_.begin(), clauses_.end());
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
}

std::size_t Formula::max_width() const {
  std::size_t w = 0;
  for (const Clause& c : clauses_) w = std::max(w, c.width());
  return w;
}

bool Formula::contains(const Clause& c) const {
  return std::binary_search(clauses_.begin(), clauses_.end(), c);
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_int(std::string_view tok, long long& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

Formula parse_dimacs(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  long long n = 0, m = 0;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;
  std::size_t declared_seen = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "c" || toks[0].front() == 'c') continue;
    if (toks[0] == "%") break;
    if (toks[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf" || !parse_int(toks[2], n) || !parse_int(toks[3], m) || n < 0 ||
          m < 0)
        throw ParseError(line_no, "malformed header, expected \"p cnf <n> <m>\"");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause before \"p cnf\" header");
    for (std::string_view tok : toks) {
      long long lit = 0;
      if (!parse_int(tok, lit)) throw ParseError(line_no, "bad literal token '" + std::string(tok) + "'");
      if (lit == 0) {
        try {
          clauses.emplace_back(std::move(pending));
        } catch (const Error& e) {
          throw ParseError(pending_line ? pending_line : line_no, e.what());
        }
        pending.clear();
        pending_line = 0;
        ++declared_seen;
        continue;
      }
      if (lit > n || -lit > n)
        throw ParseError(line_no, "literal " + std::string(tok) + " out of range for n=" + std::to_string(n));
      if (pending.empty()) pending_line = line_no;
      pending.push_back(Literal::from_dimacs(static_cast<int>(lit)));
    }
  }
  if (!have_header) throw ParseError(line_no, "missing \"p cnf\" header");
  if (!pending.empty()) throw ParseError(pending_line, "unterminated clause (missing trailing 0)");
  if (static_cast<long long>(declared_seen) != m)
    throw ParseError(line_no, "header declares " + std::to_string(m) + " clauses, found " +
                                  std::to_string(declared_seen));
  return Formula(static_cast<int>(n), std::move(clauses));
}

Formula read_dimacs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dimacs(ss.str());
}

std::string write_dimacs(const Formula& f, std::span<const std::string> comments) {
  std::string out;
  for (const std::string& c : comments) out += "c " + c + "\n";
  out += "p cnf " + std::to_string(f.num_vars()) + " " + std::to_string(f.size()) + "\n";
  for (const Clause& c : f.clauses()) {
    for (Literal l : c.literals()) out += std::to_string(l.dimacs()) + " ";
    out += "0\n";
  }
  return out;
}

Formula negation_closure(const Formula& f) {
  std::vector<Clause> all(f.clauses().begin(), f.clauses().end());
  all.reserve(2 * f.size());
  for (const Clause& c : f.clauses()) all.push_back(c.negation());
  return Formula(f.num_vars(), std::move(all));
}

bool is_negation_closed(const Formula& f) {
  for (const Clause& c : f.clauses())
    if (!f.contains(c.negation())) return false;
  return true;
}

namespace {

std::vector<bool> indicator(int n, std::span<const int> vars) {
  std::vector<bool> in(static_cast<std::size_t>(n) + 1, false);
  for (int v : vars) {
    if (v < 1 || v > n) throw Error("variable " + std::to_string(v) + " outside 1..n");
    in[static_cast<std::size_t>(v)] = true;
  }
  return in;
}

}  // namespace

Formula simplify(const Formula& f, std::span<const int> ones) {
  const auto in = indicator(f.num_vars(), ones);
  std::vector<Clause> out;
  for (const Clause& c : f.clauses()) {
    bool satisfied = false;
    std::vector<Literal> rest;
    for (Literal l : c.literals()) {
      if (in[static_cast<std::size_t>(l.var)]) {
        if (!l.negated) satisfied = true;
      } else {
        rest.push_back(l);
      }
    }
    if (!satisfied) out.emplace_back(std::move(rest));
  }
  return Formula(f.num_vars(), std::move(out));
}

bool is_falsified(const Formula& f) {
  return std::any_of(f.clauses().begin(), f.clauses().end(), [](const Clause& c) { return c.empty(); });
}

std::vector<Clause> live_clauses(const Formula& f, std::span<const int> q) {
  const auto in = indicator(f.num_vars(), q);
  std::vector<Clause> out;
  for (const Clause& c : f.clauses()) {
    bool live = true;
    for (Literal l : c.literals())
      if (!l.negated && in[static_cast<std::size_t>(l.var)]) live = false;
    if (live) out.push_back(c);
  }
  return out;
}

namespace {

bool literal_true(Literal l, const Assignment& a) {
  bool one = std::binary_search(a.ones.begin(), a.ones.end(), l.var);
  return one != l.negated;
}

}  // namespace

bool satisfies(const Clause& c, const Assignment& a) {
  for (Literal l : c.literals())
    if (literal_true(l, a)) return true;
  return false;
}

bool satisfies(const Formula& f, const Assignment& a) {
  for (const Clause& c : f.clauses())
    if (!satisfies(c, a)) return false;
  return true;
}

bool nae_check(const Formula& f, const Assignment& a) {
  for (const Clause& c : f.clauses()) {
    bool some_true = false, some_false = false;
    for (Literal l : c.literals()) (literal_true(l, a) ? some_true : some_false) = true;
    if (!some_true || !some_false) return false;
  }
  return true;
}

void require_engine_input(const Formula& f) {
  if (f.num_vars() > kMaxEngineVars)
    throw WidthError("engine supports at most " + std::to_string(kMaxEngineVars) + " variables, got " +
                     std::to_string(f.num_vars()));
  if (f.max_width() > 3)
    throw WidthError("engine requires clauses of width <= 3, found width " + std::to_string(f.max_width()));
}

}  // namespace naeenum
