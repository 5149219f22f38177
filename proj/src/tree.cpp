#include "naeenum/tree.hpp"

#include <algorithm>
#include <sstream>

#include "naeenum/errors.hpp"

namespace naeenum {

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::disjoint: return "disjoint";
    case Stage::kappa1: return "kappa1";
    case Stage::kappa2: return "kappa2";
    case Stage::arbitrary: return "arbitrary";
  }
  return "?";
}

std::string_view leaf_kind_name(LeafKind k) {
  switch (k) {
    case LeafKind::none: return "none";
    case LeafKind::falsified: return "falsified";
    case LeafKind::viable: return "viable";
  }
  return "?";
}

std::uint64_t child_key(std::uint64_t parent, int label) {
  // splitmix64 finalizer over the parent key mixed with the label
  std::uint64_t z = parent ^ (static_cast<std::uint64_t>(label) * 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MassUnits mass_units(std::span<const ChildInfo> children) {
  MassUnits total = 0;
  for (const ChildInfo& c : children) {
    if (c.falsifying || c.marks > kMassShift) continue;
    total += MassUnits{1} << (kMassShift - c.marks);
  }
  return total;
}

bool mass_at_most(std::span<const ChildInfo> children, std::uint64_t num, std::uint64_t den) {
  return mass_units(children) * den <= (MassUnits{num} << kMassShift);
}

mpq_class mass_rational(std::span<const ChildInfo> children) {
  mpq_class total = 0;
  for (const ChildInfo& c : children) {
    if (c.falsifying) continue;
    mpz_class den = 1;
    den <<= static_cast<mp_bitcnt_t>(c.marks);
    total += mpq_class(1, den);
  }
  total.canonicalize();
  return total;
}

int marked_count(std::span<const ChildInfo> children) {
  return static_cast<int>(std::count_if(children.begin(), children.end(), [](const ChildInfo& c) { return c.marks > 0; }));
}

int falsifying_count(std::span<const ChildInfo> children) {
  return static_cast<int>(std::count_if(children.begin(), children.end(), [](const ChildInfo& c) { return c.falsifying; }));
}

int effective_width(std::span<const ChildInfo> children) {
  return static_cast<int>(children.size()) - falsifying_count(children);
}

bool is_heavy(std::span<const ChildInfo> children) {
  if (children.size() != 3 || falsifying_count(children) != 0) return false;
  int ones = 0, marked = 0;
  for (const ChildInfo& c : children) {
    if (c.marks > 0) ++marked;
    if (c.marks == 1) ++ones;
  }
  return marked == 2 && ones == 2;
}

bool is_light_one_marked(std::span<const ChildInfo> children) {
  if (children.size() != 3 || falsifying_count(children) != 0) return false;
  int marked = 0, ones = 0;
  for (const ChildInfo& c : children) {
    if (c.marks > 0) ++marked;
    if (c.marks == 1) ++ones;
  }
  return marked == 1 && ones == 1;
}

TransversalTree::TransversalTree(Formula formula, int t) : formula_(std::move(formula)), t_(t) {}

std::vector<int> TransversalTree::path_nodes(int id) const {
  std::vector<int> out;
  for (int v = id; v >= 0; v = node(v).parent) out.push_back(v);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<int> TransversalTree::path_labels(int id) const {
  std::vector<int> out;
  for (int v : path_nodes(id))
    if (node(v).parent >= 0) out.push_back(node(v).label);
  return out;
}

std::vector<int> TransversalTree::child_labels(int id) const {
  std::vector<int> out;
  for (int c : node(id).children) out.push_back(node(c).label);
  return out;
}

std::vector<ChildInfo> TransversalTree::child_infos(int id) const {
  std::vector<ChildInfo> out;
  for (int c : node(id).children) {
    const TreeNode& ch = node(c);
    out.push_back({ch.label, static_cast<int>(ch.markers.size()), ch.falsifying});
  }
  return out;
}

Formula TransversalTree::residual(int id) const {
  std::vector<int> q = path_labels(id);
  std::sort(q.begin(), q.end());
  return simplify(formula_, q);
}

void TransversalTree::truncate(std::size_t count) {
  if (count >= nodes_.size()) return;
  nodes_.resize(count);
  for (TreeNode& n : nodes_)
    std::erase_if(n.children, [count](int c) { return static_cast<std::size_t>(c) >= count; });
}

int TransversalTree::add_root(std::uint64_t key) {
  nodes_.clear();
  TreeNode r;
  r.key = key;
  nodes_.push_back(std::move(r));
  return 0;
}

int TransversalTree::add_child(int parent, int label, std::vector<int> markers, bool falsifying, std::uint64_t key) {
  TreeNode c;
  c.id = static_cast<int>(nodes_.size());
  c.depth = node(parent).depth + 1;
  c.parent = parent;
  c.key = key;
  c.label = label;
  c.markers = std::move(markers);
  c.falsifying = falsifying;
  if (falsifying) c.leaf_kind = LeafKind::falsified;
  nodes_.push_back(std::move(c));
  node(parent).children.push_back(nodes_.back().id);
  return nodes_.back().id;
}

std::vector<ChildInfo> expand(TransversalTree& tree, int id, const Clause& clause) {
  const TreeNode& v = tree.node(id);
  if (!v.children.empty()) throw InternalError("node already expanded");
  if (v.falsifying) throw InternalError("cannot expand a falsified node");
  std::vector<int> q = tree.path_labels(id);
  std::sort(q.begin(), q.end());

  std::vector<Literal> kept;
  for (Literal l : clause.literals()) {
    bool on_path = std::binary_search(q.begin(), q.end(), l.var);
    if (on_path && !l.negated) throw InternalError("clause " + clause.to_string() + " is not live at the node");
    if (!on_path) kept.push_back(l);
  }
  Clause simplified(kept);
  if (simplified.empty() || !simplified.monotone())
    throw PreconditionViolated("clause " + clause.to_string() + " does not simplify to a positive clause");

  Formula res = simplify(tree.formula(), q);
  if (is_falsified(res)) throw InternalError("expanding a falsified node");

  std::vector<int> ancestors = tree.path_nodes(id);
  ancestors.pop_back();  // the node itself never marks its own children

  std::vector<ChildInfo> out;
  tree.node(id).clause = simplified;
  const std::uint64_t parent_key = v.key;
  for (Literal l : simplified.literals()) {
    std::vector<int> markers;
    for (int w : ancestors) {
      const auto labels = tree.child_labels(w);
      if (std::find(labels.begin(), labels.end(), l.var) != labels.end()) markers.push_back(w);
    }
    bool falsifying = res.contains(Clause({Literal::negative(l.var)}));
    out.push_back({l.var, static_cast<int>(markers.size()), falsifying});
    tree.add_child(id, l.var, std::move(markers), falsifying, child_key(parent_key, l.var));
  }
  return out;
}

int effective_width(const TransversalTree& tree, int node) { return effective_width(tree.child_infos(node)); }

ShootStats shoot_stats(const TransversalTree& tree, int from, int to) {
  std::vector<int> path = tree.path_nodes(to);
  auto it = std::find(path.begin(), path.end(), from);
  if (it == path.end()) throw InternalError("shoot endpoint is not a descendant");
  ShootStats s;
  for (; *it != to; ++it) {
    const TreeNode& u = tree.node(*it);
    s.defect += 3 - static_cast<int>(u.children.size());
    for (int c : u.children)
      if (!tree.node(c).markers.empty()) ++s.marked_edge_count;
  }
  return s;
}

mpq_class mass(const TransversalTree& tree, int node) { return mass_rational(tree.child_infos(node)); }

namespace {

mpq_class pow2_inv(std::size_t k) {
  mpz_class den = 1;
  den <<= static_cast<mp_bitcnt_t>(k);
  return mpq_class(1, den);
}

// Sum over viable leaves of the product of 2^-|M(e)| from `id` down.
void leaf_products(const TransversalTree& tree, int id, std::size_t marks, mpq_class& acc) {
  const TreeNode& u = tree.node(id);
  if (u.leaf_kind == LeafKind::viable) {
    acc += pow2_inv(marks);
    return;
  }
  for (int c : u.children) {
    const TreeNode& ch = tree.node(c);
    if (ch.falsifying) continue;
    leaf_products(tree, c, marks + ch.markers.size(), acc);
  }
}

// psi computed bottom-up from children, for the additivity self-check.
mpq_class psi_recursive(const TransversalTree& tree, int id, std::size_t& not_additive) {
  const TreeNode& u = tree.node(id);
  if (u.leaf_kind == LeafKind::viable) return 1;
  mpq_class sum = 0;
  for (int c : u.children) {
    const TreeNode& ch = tree.node(c);
    if (ch.falsifying) continue;
    sum += pow2_inv(ch.markers.size()) * psi_recursive(tree, c, not_additive);
  }
  mpq_class direct = psi_by_markings(tree, id);
  if (direct != sum) ++not_additive;
  return sum;
}

}  // namespace

mpq_class psi_by_markings(const TransversalTree& tree, int node) {
  mpq_class acc = 0;
  leaf_products(tree, node, 0, acc);
  acc.canonicalize();
  return acc;
}

std::string export_tree(const TransversalTree& tree) {
  std::ostringstream out;
  for (const TreeNode& v : tree.nodes()) {
    out << v.depth << ' ' << v.label << ' ' << v.markers.size() << ' ' << stage_name(v.stage) << ' '
        << leaf_kind_name(v.leaf_kind) << '\n';
  }
  return out.str();
}

namespace {

struct SweepFrame {
  int node;
  int heavy;  // heavy arbitrary-stage nodes strictly above this node
  int bound;  // budget in force, -1 if none
};

}  // namespace

InvariantReport check_invariants(const TransversalTree& tree, bool controlled) {
  InvariantReport rep;
  if (tree.size() == 0) return rep;
  const int n = tree.formula().num_vars();
  const int t = tree.target();

  // Recompute every marking set from the tree itself.
  std::vector<std::vector<int>> marks(tree.size());
  for (const TreeNode& v : tree.nodes()) {
    if (v.parent < 0) continue;
    std::vector<int> anc = tree.path_nodes(v.parent);
    anc.pop_back();
    for (int w : anc) {
      const auto labels = tree.child_labels(w);
      if (std::find(labels.begin(), labels.end(), v.label) != labels.end()) marks[v.id].push_back(w);
    }
  }

  std::vector<SweepFrame> stack{{0, 0, -1}};
  while (!stack.empty()) {
    SweepFrame f = stack.back();
    stack.pop_back();
    const TreeNode& u = tree.node(f.node);
    ++rep.nodes_checked;

    if (u.parent >= 0 && !u.falsifying) {
      for (int e : tree.path_nodes(u.parent)) {
        if (e == 0) continue;
        for (int m : marks[u.id])
          if (std::find(marks[e].begin(), marks[e].end(), m) != marks[e].end()) {
            ++rep.not_disjointly_marked;
            goto checked;
          }
      }
    checked:;
    }

    if (u.is_leaf()) {
      if (u.depth == t && shoot_stats(tree, 0, u.id).weight() < 3 * t - n) ++rep.shoot_weight_low;
      if (controlled && f.bound >= 0 && f.heavy > f.bound) ++rep.heavy_over_budget;
      continue;
    }

    std::vector<ChildInfo> kids;
    for (int c : u.children)
      kids.push_back({tree.node(c).label, static_cast<int>(marks[c].size()), tree.node(c).falsifying});
    const int marked = marked_count(kids);

    if (u.depth >= tree.t0 && kids.size() == 3 && marked == 0) ++rep.unmarked_after_t0;
    if ((marked == 1 && !mass_at_most(kids, 5, 2)) || (marked == 2 && !mass_at_most(kids, 2, 1)) ||
        (marked == 3 && !mass_at_most(kids, 3, 2)))
      ++rep.mass_over_marking_bound;
    if (u.stage == Stage::kappa2) {
      if (effective_width(kids) > 2 || !mass_at_most(kids, 3, 2)) ++rep.kappa2_shape;
      if (effective_width(kids) < 2) ++rep.kappa2_width_below_two;
    }
    int heavy = f.heavy;
    int bound = u.heavy_bound >= 0 ? u.heavy_bound : f.bound;
    if (controlled && u.stage == Stage::arbitrary) {
      if (marked == 1 && !mass_at_most(kids, 9, 4)) ++rep.one_marked_heavy_mass;
      if (is_heavy(kids)) ++heavy;
    }
    for (int c : u.children) stack.push_back({c, heavy, bound});
  }

  std::size_t not_additive = 0;
  psi_recursive(tree, 0, not_additive);
  rep.psi_not_additive = not_additive;
  return rep;
}

}  // namespace naeenum
