#include "pground/builtins.hpp"

#include <sstream>
#include <unordered_map>

#include "pground/errors.hpp"
#include "pground/formula_text.hpp"

namespace pground::builtins {

namespace {

bdd::Manager arg_manager(int arity) {
  std::vector<bdd::VarInfo> order;
  for (int i = 1; i <= arity; ++i)
    order.push_back({"x" + std::to_string(i), bdd::VarKind::Plain});
  return bdd::Manager(order);
}

// Rebuild a pattern BDD inside the analysis manager with x_i replaced by the
// actual argument variable. Arguments may repeat, which plain rename cannot
// express directly, hence the structural rebuild.
bdd::NodeRef rebuild(const bdd::Manager& src, bdd::NodeRef n, bdd::Manager& dst,
                     const std::vector<bdd::VarId>& args,
                     std::unordered_map<bdd::NodeRef, bdd::NodeRef>& memo) {
  if (bdd::Manager::is_const(n)) return n;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  bdd::NodeRef lo = rebuild(src, src.node_low(n), dst, args, memo);
  bdd::NodeRef hi = rebuild(src, src.node_high(n), dst, args, memo);
  bdd::NodeRef v = dst.mk_var(args[src.node_var(n)]);
  bdd::NodeRef r = dst.apply(bdd::Op::Or, dst.apply(bdd::Op::And, v, hi),
                             dst.apply(bdd::Op::And, dst.negate(v), lo));
  memo.emplace(n, r);
  return r;
}

} // namespace

Table Table::defaults() {
  Table t;
  t.set({"=", 2}, "x1 <-> x2");
  for (const char* cmp : {"=<", ">", "<", ">=", "=="})
    t.set({cmp, 2}, "x1 & x2");
  t.set({"is", 2}, "x1 & x2");
  return t;
}

void Table::set(const ast::Pred& p, std::string pattern) {
  entries_[p] = std::move(pattern);
}

bool Table::contains(const ast::Pred& p) const { return entries_.count(p) != 0; }

bdd::NodeRef Table::pattern(const ast::Pred& p, bdd::Manager& m,
                            const std::vector<bdd::VarId>& args) const {
  auto it = entries_.find(p);
  if (it == entries_.end())
    throw UnsupportedError("no success pattern for builtin " + p.key());
  if (static_cast<int>(args.size()) != p.arity)
    throw InternalError("builtin pattern arity mismatch for " + p.key());
  bdd::Manager tmp = arg_manager(p.arity);
  bdd::NodeRef pat = formula_text::parse(tmp, it->second);
  std::unordered_map<bdd::NodeRef, bdd::NodeRef> memo;
  return rebuild(tmp, pat, m, args, memo);
}

Table load_table(std::string_view text) {
  Table t = Table::defaults();
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto notblank = line.find_first_not_of(" \t\r");
    if (notblank == std::string::npos) continue;
    auto slash = line.find('/');
    auto colon = line.find(':', slash == std::string::npos ? 0 : slash);
    if (slash == std::string::npos || colon == std::string::npos || slash > colon)
      throw ParseError(lineno, 1, "builtin table: expected 'name/arity: pattern'");
    std::string name = line.substr(notblank, slash - notblank);
    int arity;
    try {
      arity = std::stoi(line.substr(slash + 1, colon - slash - 1));
    } catch (...) {
      throw ParseError(lineno, 1, "builtin table: bad arity");
    }
    if (arity < 0 || arity > 32)
      throw ParseError(lineno, 1, "builtin table: bad arity");
    std::string pattern = line.substr(colon + 1);
    // Check the pattern parses and stays within x1..xn now, not at use time.
    bdd::Manager tmp = arg_manager(arity);
    bdd::NodeRef n = formula_text::parse(tmp, pattern);
    if (!tmp.is_positive(n) && n != bdd::Manager::kFalse)
      throw ParseError(lineno, 1, "builtin table: pattern must be positive (or 0)");
    t.set({name, arity}, pattern);
  }
  return t;
}

} // namespace pground::builtins
