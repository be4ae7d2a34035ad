#pragma once

#include <optional>
#include <string>
#include <vector>

namespace shopd {

/// Planar rooted tree with leaves labeled bijectively by {1..n}. Internal
/// vertices are identified by planar preorder index (root = 0, children
/// left to right). Every internal vertex has arity >= 1.
class PlanarTree {
 public:
  struct Node {
    int label = 0;             // > 0 for a leaf; 0 for an internal vertex
    std::vector<Node> ch;      // children; empty exactly for leaves
    bool is_leaf() const { return ch.empty(); }
  };

  PlanarTree() = default;
  explicit PlanarTree(Node root);

  const Node& root() const { return root_; }

  int n_vertices() const;          // internal vertices
  int n_leaves() const;
  int arity(int vertex) const;     // number of children of an internal vertex

  /// Labels of the leaves read in planar order.
  std::vector<int> leaf_sequence() const;

  /// Arities of internal vertices in preorder.
  std::vector<int> vertex_arities() const;

  /// Parent vertex id of each internal vertex (-1 for root).
  std::vector<int> parents() const;

  /// For each internal vertex: ids of its internal children in slot order.
  std::vector<std::vector<int>> internal_children() const;

  /// Number of unordered vertex triples {u,v,w} where two are internal
  /// children of the third: sum over v of C(#internal children of v, 2).
  int axil_count() const;

  /// Canonical literal, e.g. "((1,3),2)". Parsing this back yields an
  /// equal tree.
  std::string str() const;

  friend bool operator==(const PlanarTree& a, const PlanarTree& b);
  friend bool operator<(const PlanarTree& a, const PlanarTree& b);

  /// Grammar: tree ::= '(' item (',' item)* ')', item ::= INT | tree.
  /// Reports position-annotated errors; leaf labels must be exactly 1..n.
  static PlanarTree parse(const std::string& text);

  /// Apply a slot permutation at each internal vertex: perms[v][old_slot]
  /// = new_slot. Returns the rearranged planar tree.
  PlanarTree apply_slot_perms(const std::vector<std::vector<int>>& perms) const;

 private:
  Node root_;
  void validate() const;
};

/// Connected set of internal vertices of a parent tree.
struct Subtree {
  std::vector<int> vertices;  // sorted preorder ids, nonempty, connected

  bool contains(int v) const;
};

/// Isomorphism of underlying rooted leaf-labeled trees between two planar
/// representatives. slot_perm[v] is defined for every source vertex id;
/// vertex_map sends source vertex ids to target vertex ids.
struct TreeIso {
  PlanarTree source, target;
  std::vector<std::vector<int>> slot_perm;
  std::vector<int> vertex_map;
  std::vector<int> leaf_map;  // source leaf planar position -> target position (0-based)
};

/// All planar rooted trees with leaves labeled by a bijection to {1..n},
/// at most kmax internal vertices and every vertex arity >= min_arity.
/// Deterministic order: vertex count ascending, then shape, then labeling.
std::vector<PlanarTree> enumerate_trees(int n, int kmax, int min_arity = 1);

/// Shapes only (identity labeling 1..n in planar order).
std::vector<PlanarTree> enumerate_shapes(int n, int kmax, int min_arity = 1);

/// Every nonempty connected set of internal vertices.
std::vector<Subtree> connected_subtrees(const PlanarTree& t);

/// Contract a connected subtree to a single vertex. Leaf labels of t are
/// preserved; the merged vertex's slots are the subtree's external legs in
/// planar order.
PlanarTree contract(const PlanarTree& t, const Subtree& s);

/// contract() plus the vertex correspondence: old vertex id -> new id
/// (all of s maps to the merged vertex).
std::pair<PlanarTree, std::vector<int>> contract_with_map(const PlanarTree& t, const Subtree& s);

/// The standalone tree of a subtree; its leaves are the external legs in
/// planar order, labeled 1..m by position.
PlanarTree subtree_as_tree(const PlanarTree& t, const Subtree& s);

/// All unordered families of pairwise disjoint connected subtrees covering
/// every vertex (equivalently: one family per subset of internal edges).
/// Each family is returned with parts ordered by the preorder of the
/// quotient tree.
std::vector<std::vector<Subtree>> covering_partitions(const PlanarTree& t);

/// All label-preserving isomorphisms of the underlying rooted trees.
std::vector<TreeIso> isomorphisms(const PlanarTree& t, const PlanarTree& u);

/// All planar trees isomorphic to t as rooted leaf-labeled trees, each with
/// the connecting isomorphism from t. Contains (t, identity).
std::vector<std::pair<PlanarTree, TreeIso>> planar_orbit(const PlanarTree& t);

}  // namespace shopd
