#include "c2v/pathmine/paths.hpp"

#include <algorithm>
#include <stdexcept>

namespace c2v::pathmine {

void MiningLimits::validate() const {
  if (max_length <= 0 || max_width <= 0 || max_contexts <= 0) {
    throw std::invalid_argument("mining limits must be positive");
  }
}

IndexedAst::IndexedAst(const cparse::AstNode& root) {
  // Iterative pre-order so deep expression chains cannot blow the stack.
  std::vector<std::pair<const cparse::AstNode*, std::int64_t>> stack{{&root, -1}};
  while (!stack.empty()) {
    auto [node, parent] = stack.back();
    stack.pop_back();
    const auto index = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(node);
    parent_.push_back(parent);
    children_.emplace_back();
    if (parent >= 0) children_[static_cast<std::size_t>(parent)].push_back(index);
    if (node->is_terminal()) terminals_.push_back(index);
    for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) {
      stack.emplace_back(&*it, index);
    }
  }
}

std::vector<TerminalPair> IndexedAst::pairs(const MiningLimits& limits) const {
  const auto max_len = static_cast<std::uint32_t>(limits.max_length);
  const auto max_width = static_cast<std::size_t>(limits.max_width);

  // terminal ordinal by flattened index
  std::vector<std::uint32_t> ordinal(nodes_.size(), 0);
  for (std::uint32_t t = 0; t < terminals_.size(); ++t) ordinal[terminals_[t]] = t;

  // below[i]: (terminal ordinal, edges from node i down to it), only for
  // distances that can still be part of a path.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> below(nodes_.size());
  std::vector<TerminalPair> out;

  // Children have larger pre-order indices than their parent, so a reverse
  // sweep is a valid post-order.
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    if (nodes_[i]->is_terminal()) {
      below[i].emplace_back(ordinal[i], 0);
      continue;
    }
    const auto& kids = children_[i];
    for (std::size_t a = 0; a < kids.size(); ++a) {
      const auto& left = below[kids[a]];
      for (std::size_t b = a + 1; b < kids.size() && b - a <= max_width; ++b) {
        const auto& right = below[kids[b]];
        for (const auto& [ts, ds] : left) {
          for (const auto& [te, de] : right) {
            if (ds + de + 2 <= max_len) {
              out.push_back({ts, te, static_cast<std::uint32_t>(i)});
            }
          }
        }
      }
    }
    auto& mine = below[i];
    for (auto kid : kids) {
      for (const auto& [t, d] : below[kid]) {
        // the path still needs one more edge down on the other side
        if (d + 2 < max_len) mine.emplace_back(t, d + 1);
      }
      std::vector<std::pair<std::uint32_t, std::uint32_t>>().swap(below[kid]);
    }
  }
  std::sort(out.begin(), out.end(), [](const TerminalPair& x, const TerminalPair& y) {
    return x.start != y.start ? x.start < y.start : x.end < y.end;
  });
  return out;
}

AstPath IndexedAst::materialize(const TerminalPair& pair) const {
  AstPath path;
  std::vector<const cparse::AstNode*> descent;
  for (auto i = static_cast<std::int64_t>(terminals_[pair.start]); i != pair.top;
       i = parent_[static_cast<std::size_t>(i)]) {
    path.nodes.push_back(nodes_[static_cast<std::size_t>(i)]);
    path.directions.push_back(Direction::Up);
  }
  path.nodes.push_back(nodes_[pair.top]);
  for (auto i = static_cast<std::int64_t>(terminals_[pair.end]); i != pair.top;
       i = parent_[static_cast<std::size_t>(i)]) {
    descent.push_back(nodes_[static_cast<std::size_t>(i)]);
  }
  for (auto it = descent.rbegin(); it != descent.rend(); ++it) {
    path.nodes.push_back(*it);
    path.directions.push_back(Direction::Down);
  }
  return path;
}

std::vector<AstPath> enumerate_paths(const cparse::Ast& ast,
                                     const MiningLimits& limits) {
  limits.validate();
  IndexedAst indexed(ast.root);
  std::vector<AstPath> paths;
  for (const auto& pair : indexed.pairs(limits)) paths.push_back(indexed.materialize(pair));
  return paths;
}

std::string path_string(const AstPath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.nodes.size(); ++i) {
    out += path.nodes[i]->kind;
    if (i < path.directions.size()) {
      out += path.directions[i] == Direction::Up ? kUpGlyph : kDownGlyph;
    }
  }
  return out;
}

}  // namespace c2v::pathmine
