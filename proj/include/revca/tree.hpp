// Expression trees for the genetic-programming engines. Leaves are the
// d-1 neighborhood variables, internal nodes Boolean operators. Trees are
// stored flat in preorder, which makes subtree extraction and replacement
// vector splices.
//
// Depth convention: the root has depth 0 and the depth of a tree is the
// depth of its deepest node; the engine-level bound is tree_depth <= max_depth.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "revca/bittable.hpp"
#include "revca/boolfun.hpp"
#include "revca/rng.hpp"

namespace revca {

enum class Op : std::uint8_t { Var, And, Or, Xor, Xnor, AndC, Not, If };

inline int op_arity(Op op) {
  switch (op) {
    case Op::Var: return 0;
    case Op::Not: return 1;
    case Op::If: return 3;
    default: return 2;
  }
}

inline const char* op_name(Op op) {
  switch (op) {
    case Op::Var: return "VAR";
    case Op::And: return "AND";
    case Op::Or: return "OR";
    case Op::Xor: return "XOR";
    case Op::Xnor: return "XNOR";
    case Op::AndC: return "ANDC";
    case Op::Not: return "NOT";
    case Op::If: return "IF";
  }
  return "?";
}

inline Op op_from_name(const std::string& s) {
  if (s == "AND") return Op::And;
  if (s == "OR") return Op::Or;
  if (s == "XOR") return Op::Xor;
  if (s == "XNOR") return Op::Xnor;
  if (s == "ANDC") return Op::AndC;
  if (s == "NOT") return Op::Not;
  if (s == "IF") return Op::If;
  throw std::invalid_argument("unknown operator '" + s + "'");
}

struct TreeNode {
  Op op;
  std::uint8_t var;  // leaf variable index, only for Op::Var
};

class Tree {
 public:
  Tree() = default;
  static Tree leaf(int var) {
    Tree t;
    t.nodes_.push_back({Op::Var, static_cast<std::uint8_t>(var)});
    return t;
  }

  std::size_t size() const { return nodes_.size(); }
  const TreeNode& node(std::size_t i) const { return nodes_[i]; }
  std::vector<TreeNode>& raw() { return nodes_; }
  const std::vector<TreeNode>& raw() const { return nodes_; }

  // One past the last node of the subtree rooted at pos.
  std::size_t subtree_end(std::size_t pos) const {
    std::size_t need = 1, i = pos;
    while (need > 0) {
      need += static_cast<std::size_t>(op_arity(nodes_[i].op));
      --need;
      ++i;
    }
    return i;
  }

  std::size_t subtree_size(std::size_t pos) const { return subtree_end(pos) - pos; }

  Tree subtree(std::size_t pos) const {
    Tree t;
    std::size_t end = subtree_end(pos);
    t.nodes_.assign(nodes_.begin() + static_cast<std::ptrdiff_t>(pos),
                    nodes_.begin() + static_cast<std::ptrdiff_t>(end));
    return t;
  }

  // Replace the subtree rooted at pos by `repl`.
  Tree replaced(std::size_t pos, const Tree& repl) const {
    Tree t;
    std::size_t end = subtree_end(pos);
    t.nodes_.reserve(nodes_.size() - (end - pos) + repl.nodes_.size());
    t.nodes_.insert(t.nodes_.end(), nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(pos));
    t.nodes_.insert(t.nodes_.end(), repl.nodes_.begin(), repl.nodes_.end());
    t.nodes_.insert(t.nodes_.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(end), nodes_.end());
    return t;
  }

  // Depth of every node (root = 0), preorder.
  std::vector<int> node_depths() const {
    std::vector<int> depth(nodes_.size());
    std::vector<int> stack;  // remaining children at each open level
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      depth[i] = static_cast<int>(stack.size());
      int a = op_arity(nodes_[i].op);
      if (a > 0) {
        stack.push_back(a);
      } else {
        while (!stack.empty() && --stack.back() == 0) stack.pop_back();
      }
    }
    return depth;
  }

  int depth() const {
    int best = 0;
    for (int v : node_depths()) best = std::max(best, v);
    return best;
  }

  // Child-slot path from the root to each node, preorder.
  std::vector<std::vector<int>> coordinates() const {
    std::vector<std::vector<int>> out(nodes_.size());
    struct Level {
      int remaining;
      int next_slot;
    };
    std::vector<Level> stack;
    std::vector<int> path;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      out[i] = path;
      int a = op_arity(nodes_[i].op);
      if (a > 0) {
        stack.push_back({a, 0});
        path.push_back(0);
      } else {
        while (!stack.empty()) {
          if (--stack.back().remaining == 0) {
            stack.pop_back();
            path.pop_back();
          } else {
            ++path.back();
            break;
          }
        }
      }
    }
    return out;
  }

  // Node position reached by a child-slot path, or npos if it leads nowhere.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position_at(const std::vector<int>& path) const {
    std::size_t pos = 0;
    for (int slot : path) {
      int a = op_arity(nodes_[pos].op);
      if (slot >= a) return npos;
      std::size_t child = pos + 1;
      for (int k = 0; k < slot; ++k) child = subtree_end(child);
      pos = child;
    }
    return pos;
  }

  // Bit-parallel evaluation over all 2^num_vars inputs.
  BitTable evaluate(int num_vars) const {
    std::vector<BitTable> stack;
    std::size_t len = std::size_t{1} << num_vars;
    for (std::size_t i = nodes_.size(); i-- > 0;) {
      const TreeNode& nd = nodes_[i];
      switch (nd.op) {
        case Op::Var: {
          if (nd.var >= num_vars) throw std::logic_error("Tree::evaluate: variable out of range");
          BitTable t(len);
          for (std::size_t x = 0; x < len; ++x)
            if ((x >> (num_vars - 1 - nd.var)) & 1u) t.set(x, true);
          stack.push_back(std::move(t));
          break;
        }
        case Op::Not: {
          BitTable a = std::move(stack.back());
          stack.pop_back();
          a.invert();
          stack.push_back(std::move(a));
          break;
        }
        case Op::If: {
          BitTable c = std::move(stack.back());
          stack.pop_back();
          BitTable t = std::move(stack.back());
          stack.pop_back();
          BitTable e = std::move(stack.back());
          stack.pop_back();
          t &= c;
          c.invert();
          e &= c;
          t |= e;
          stack.push_back(std::move(t));
          break;
        }
        default: {
          BitTable a = std::move(stack.back());
          stack.pop_back();
          BitTable b = std::move(stack.back());
          stack.pop_back();
          switch (nd.op) {
            case Op::And: a &= b; break;
            case Op::Or: a |= b; break;
            case Op::Xor: a ^= b; break;
            case Op::Xnor:
              a ^= b;
              a.invert();
              break;
            case Op::AndC:
              b.invert();
              a &= b;
              break;
            default: throw std::logic_error("unreachable");
          }
          stack.push_back(std::move(a));
          break;
        }
      }
    }
    if (stack.size() != 1) throw std::logic_error("Tree::evaluate: malformed tree");
    return std::move(stack.back());
  }

  std::string str() const {
    std::string out;
    format(0, out);
    return out;
  }

 private:
  std::size_t format(std::size_t pos, std::string& out) const {
    const TreeNode& nd = nodes_[pos];
    if (nd.op == Op::Var) {
      out += "x" + std::to_string(static_cast<int>(nd.var));
      return pos + 1;
    }
    out += op_name(nd.op);
    out += '(';
    std::size_t p = pos + 1;
    for (int k = 0; k < op_arity(nd.op); ++k) {
      if (k) out += ',';
      p = format(p, out);
    }
    out += ')';
    return p;
  }

  std::vector<TreeNode> nodes_;
};

// --- random generation -------------------------------------------------------

// Grow method: every node drawn uniformly from functions plus terminals
// until the depth limit forces a terminal. The root is a function whenever
// the limit allows, so trees never degenerate to a bare leaf unless asked.
inline Tree grow_tree(const std::vector<Op>& ops, int num_vars, int depth_limit, Rng& rng,
                      bool root_function = true) {
  Tree t;
  auto& nodes = t.raw();
  std::size_t nfun = ops.size();
  std::size_t nterm = static_cast<std::size_t>(num_vars);
  // iterative preorder build
  struct Todo {
    int depth;
    bool force_function;
  };
  std::vector<Todo> todo{{0, root_function && depth_limit > 0}};
  while (!todo.empty()) {
    Todo cur = todo.back();
    todo.pop_back();
    bool terminal;
    if (cur.depth >= depth_limit)
      terminal = true;
    else if (cur.force_function)
      terminal = false;
    else
      terminal = rng.below(nfun + nterm) < nterm;
    if (terminal) {
      nodes.push_back({Op::Var, static_cast<std::uint8_t>(rng.index(nterm))});
    } else {
      Op op = ops[rng.index(nfun)];
      nodes.push_back({op, 0});
      // LIFO stack: sibling order in the flat array follows pop order,
      // which is immaterial for freshly random children
      for (int k = 0; k < op_arity(op); ++k) todo.push_back({cur.depth + 1, false});
    }
  }
  return t;
}

// Full method: function nodes down to the depth limit, then terminals.
inline Tree full_tree(const std::vector<Op>& ops, int num_vars, int depth_limit, Rng& rng) {
  Tree t;
  auto& nodes = t.raw();
  std::vector<int> todo{0};
  while (!todo.empty()) {
    int depth = todo.back();
    todo.pop_back();
    if (depth >= depth_limit) {
      nodes.push_back({Op::Var, static_cast<std::uint8_t>(rng.index(static_cast<std::size_t>(num_vars)))});
    } else {
      Op op = ops[rng.index(ops.size())];
      nodes.push_back({op, 0});
      for (int k = 0; k < op_arity(op); ++k) todo.push_back(depth + 1);
    }
  }
  return t;
}

// Ramped half and half over depths 2..max_depth.
inline Tree ramped_tree(const std::vector<Op>& ops, int num_vars, int max_depth, std::size_t ordinal,
                        Rng& rng) {
  int lo = std::min(2, max_depth);
  int span = std::max(1, max_depth - lo + 1);
  int depth = lo + static_cast<int>(ordinal / 2 % static_cast<std::size_t>(span));
  bool full = ordinal % 2 == 0;
  return full ? full_tree(ops, num_vars, depth, rng) : grow_tree(ops, num_vars, depth, rng);
}

namespace detail {

// Crossover point selection with the usual 90% bias toward internal nodes.
inline std::size_t pick_point(const Tree& t, Rng& rng) {
  std::vector<std::size_t> internal, leaves;
  for (std::size_t i = 0; i < t.size(); ++i)
    (op_arity(t.node(i).op) > 0 ? internal : leaves).push_back(i);
  bool want_internal = rng.chance(0.9);
  const auto& pool = (want_internal && !internal.empty()) ? internal
                     : (!leaves.empty() ? leaves : internal);
  return pool[rng.index(pool.size())];
}

// Aligned position pairs of the common region (same arity along the path
// from the root).
inline void common_region(const Tree& a, std::size_t pa, const Tree& b, std::size_t pb,
                          std::vector<std::pair<std::size_t, std::size_t>>& out) {
  out.emplace_back(pa, pb);
  int aa = op_arity(a.node(pa).op), ab = op_arity(b.node(pb).op);
  if (aa != ab) return;
  std::size_t ca = pa + 1, cb = pb + 1;
  for (int k = 0; k < aa; ++k) {
    common_region(a, ca, b, cb, out);
    ca = a.subtree_end(ca);
    cb = b.subtree_end(cb);
  }
}

inline void uniform_combine(const Tree& a, std::size_t pa, const Tree& b, std::size_t pb, Rng& rng,
                            std::vector<TreeNode>& out) {
  int aa = op_arity(a.node(pa).op), ab = op_arity(b.node(pb).op);
  if (aa != ab) {
    // frontier of the common region: take the whole subtree from one parent
    bool from_a = rng.coin();
    const Tree& chosen = from_a ? a : b;
    std::size_t pos = from_a ? pa : pb;
    std::size_t end = chosen.subtree_end(pos);
    out.insert(out.end(), chosen.raw().begin() + static_cast<std::ptrdiff_t>(pos),
               chosen.raw().begin() + static_cast<std::ptrdiff_t>(end));
    return;
  }
  out.push_back(rng.coin() ? a.node(pa) : b.node(pb));
  std::size_t ca = pa + 1, cb = pb + 1;
  for (int k = 0; k < aa; ++k) {
    uniform_combine(a, ca, b, cb, rng, out);
    ca = a.subtree_end(ca);
    cb = b.subtree_end(cb);
  }
}

}  // namespace detail

// The five crossover operators. Each returns one child grown from p1 with
// genetic material from p2.

inline Tree crossover_subtree(const Tree& p1, const Tree& p2, Rng& rng) {
  std::size_t a = detail::pick_point(p1, rng);
  std::size_t b = detail::pick_point(p2, rng);
  return p1.replaced(a, p2.subtree(b));
}

inline Tree crossover_one_point(const Tree& p1, const Tree& p2, Rng& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> cr;
  detail::common_region(p1, 0, p2, 0, cr);
  auto [a, b] = cr[rng.index(cr.size())];
  return p1.replaced(a, p2.subtree(b));
}

inline Tree crossover_uniform(const Tree& p1, const Tree& p2, Rng& rng) {
  Tree t;
  detail::uniform_combine(p1, 0, p2, 0, rng, t.raw());
  return t;
}

inline Tree crossover_size_fair(const Tree& p1, const Tree& p2, Rng& rng) {
  std::size_t a = detail::pick_point(p1, rng);
  std::size_t la = p1.subtree_size(a);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < p2.size(); ++i)
    if (p2.subtree_size(i) <= 2 * la + 1) candidates.push_back(i);
  std::size_t b = candidates[rng.index(candidates.size())];
  return p1.replaced(a, p2.subtree(b));
}

inline Tree crossover_context_preserving(const Tree& p1, const Tree& p2, Rng& rng) {
  auto coords = p1.coordinates();
  std::vector<std::pair<std::size_t, std::size_t>> valid;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    std::size_t j = p2.position_at(coords[i]);
    if (j != Tree::npos) valid.emplace_back(i, j);
  }
  auto [a, b] = valid[rng.index(valid.size())];
  return p1.replaced(a, p2.subtree(b));
}

// Subtree mutation: replace a uniformly chosen node by a freshly grown
// subtree that respects the remaining depth budget.
inline Tree mutate_subtree(const Tree& t, const std::vector<Op>& ops, int num_vars, int max_depth,
                           Rng& rng) {
  std::size_t pos = rng.index(t.size());
  int remaining = max_depth - t.node_depths()[pos];
  Tree repl = remaining <= 0 ? Tree::leaf(static_cast<int>(rng.index(static_cast<std::size_t>(num_vars))))
                             : grow_tree(ops, num_vars, remaining, rng, false);
  return t.replaced(pos, repl);
}

// Cut every internal node sitting at the depth bound down to a random leaf.
inline Tree truncate_to_depth(const Tree& t, int num_vars, int max_depth, Rng& rng) {
  Tree out;
  auto depths = t.node_depths();
  std::size_t i = 0;
  std::vector<TreeNode>& nodes = out.raw();
  while (i < t.size()) {
    if (depths[i] >= max_depth && op_arity(t.node(i).op) > 0) {
      nodes.push_back({Op::Var, static_cast<std::uint8_t>(rng.index(static_cast<std::size_t>(num_vars)))});
      i = t.subtree_end(i);
    } else {
      nodes.push_back(t.node(i));
      ++i;
    }
  }
  return out;
}

}  // namespace revca
