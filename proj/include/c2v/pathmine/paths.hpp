#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "c2v/cparse/ast.hpp"

namespace c2v::pathmine {

enum class Direction : std::uint8_t { Up, Down };

// Walk n1 d1 n2 ... dk n(k+1) between two terminals. nodes.size() equals
// directions.size() + 1; the nodes point into the Ast the path came from.
struct AstPath {
  std::vector<const cparse::AstNode*> nodes;
  std::vector<Direction> directions;

  std::size_t length() const { return directions.size(); }
  const cparse::AstNode& start() const { return *nodes.front(); }
  const cparse::AstNode& end() const { return *nodes.back(); }
};

struct MiningLimits {
  int max_length = 8;     // edges
  int max_width = 3;      // child-index spread at the top of the path
  int max_contexts = 200;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument unless every limit is positive.
  void validate() const;
};

// Index form of a path between terminals `start` and `end` (pre-order
// terminal positions), used to defer building the node list.
struct TerminalPair {
  std::uint32_t start;
  std::uint32_t end;
  std::uint32_t top;  // flattened index of the lowest common ancestor
};

// Flattened view of an Ast with parent links, built once per tree.
class IndexedAst {
 public:
  explicit IndexedAst(const cparse::AstNode& root);

  std::size_t size() const { return nodes_.size(); }
  const cparse::AstNode& node(std::size_t i) const { return *nodes_[i]; }
  std::int64_t parent(std::size_t i) const { return parent_[i]; }
  const std::vector<std::uint32_t>& terminals() const { return terminals_; }

  // All terminal pairs within the limits, ordered by (start, end) in
  // source order.
  std::vector<TerminalPair> pairs(const MiningLimits& limits) const;

  AstPath materialize(const TerminalPair& pair) const;

 private:
  std::vector<const cparse::AstNode*> nodes_;
  std::vector<std::int64_t> parent_;
  std::vector<std::vector<std::uint32_t>> children_;
  std::vector<std::uint32_t> terminals_;  // flattened index per terminal
};

// Every terminal pair whose connecting path has at most max_length edges
// and whose child-index spread at the common ancestor is at most max_width.
// One path per pair of terminal nodes, earlier terminal first.
std::vector<AstPath> enumerate_paths(const cparse::Ast& ast,
                                     const MiningLimits& limits);

// Node kinds joined by the direction glyphs, e.g.
// "NameExpr↑AssignExpr↓IntegerLiteralExpr". Terminal values are omitted.
std::string path_string(const AstPath& path);

inline constexpr std::string_view kUpGlyph = "↑";
inline constexpr std::string_view kDownGlyph = "↓";

}  // namespace c2v::pathmine
