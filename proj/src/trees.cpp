#include "shopd/trees.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace shopd {

namespace {

void collect_leaves(const PlanarTree::Node& n, std::vector<int>& out) {
  if (n.is_leaf()) {
    out.push_back(n.label);
    return;
  }
  for (const auto& c : n.ch) collect_leaves(c, out);
}

void node_str(const PlanarTree::Node& n, std::string& out) {
  if (n.is_leaf()) {
    out += std::to_string(n.label);
    return;
  }
  out += '(';
  for (size_t i = 0; i < n.ch.size(); ++i) {
    if (i) out += ',';
    node_str(n.ch[i], out);
  }
  out += ')';
}

// (internal vertex count, leaf count) of a branch
std::pair<int, int> branch_counts(const PlanarTree::Node& n) {
  if (n.is_leaf()) return {0, 1};
  int v = 1, l = 0;
  for (const auto& c : n.ch) {
    auto [cv, cl] = branch_counts(c);
    v += cv;
    l += cl;
  }
  return {v, l};
}

}  // namespace

PlanarTree::PlanarTree(Node root) : root_(std::move(root)) { validate(); }

void PlanarTree::validate() const {
  if (root_.is_leaf()) throw std::invalid_argument("PlanarTree: root must be a vertex");
  std::vector<int> labels;
  collect_leaves(root_, labels);
  std::vector<int> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] == (int)i + 1) continue;
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw std::invalid_argument("PlanarTree: duplicate leaf label " +
                                  std::to_string(sorted[i]));
    throw std::invalid_argument("PlanarTree: leaf label gap, expected " + std::to_string(i + 1) +
                                " found " + std::to_string(sorted[i]));
  }
}

int PlanarTree::n_vertices() const { return branch_counts(root_).first; }
int PlanarTree::n_leaves() const { return branch_counts(root_).second; }

int PlanarTree::arity(int vertex) const { return vertex_arities().at(vertex); }

std::vector<int> PlanarTree::leaf_sequence() const {
  std::vector<int> l;
  collect_leaves(root_, l);
  return l;
}

std::vector<int> PlanarTree::vertex_arities() const {
  std::vector<int> a;
  std::function<void(const Node&)> walk = [&](const Node& n) {
    if (n.is_leaf()) return;
    a.push_back((int)n.ch.size());
    for (const auto& c : n.ch) walk(c);
  };
  walk(root_);
  return a;
}

std::vector<int> PlanarTree::parents() const {
  std::vector<int> par;
  int next = 0;
  std::function<void(const Node&, int)> walk = [&](const Node& n, int parent) {
    if (n.is_leaf()) return;
    int me = next++;
    par.push_back(parent);
    for (const auto& c : n.ch) walk(c, me);
  };
  walk(root_, -1);
  return par;
}

std::vector<std::vector<int>> PlanarTree::internal_children() const {
  std::vector<std::vector<int>> kids;
  int next = 0;
  std::function<int(const Node&)> walk = [&](const Node& n) -> int {
    int me = next++;
    kids.emplace_back();
    for (const auto& c : n.ch) {
      if (c.is_leaf()) continue;
      int cid = walk(c);
      kids[me].push_back(cid);
    }
    return me;
  };
  walk(root_);
  return kids;
}

int PlanarTree::axil_count() const {
  int total = 0;
  for (const auto& kids : internal_children()) {
    int m = (int)kids.size();
    total += m * (m - 1) / 2;
  }
  return total;
}

std::string PlanarTree::str() const {
  std::string out;
  node_str(root_, out);
  return out;
}

bool operator==(const PlanarTree& a, const PlanarTree& b) { return a.str() == b.str(); }
bool operator<(const PlanarTree& a, const PlanarTree& b) { return a.str() < b.str(); }

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("parse error at 1:" + std::to_string(pos + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }

  int parse_int() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (pos == start) fail("expected integer");
    return std::stoi(s.substr(start, pos - start));
  }

  PlanarTree::Node parse_item() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    if (s[pos] == '(') return parse_vertex();
    PlanarTree::Node leaf;
    leaf.label = parse_int();
    if (leaf.label <= 0) fail("leaf labels are positive");
    return leaf;
  }

  PlanarTree::Node parse_vertex() {
    skip_ws();
    if (pos >= s.size() || s[pos] != '(') fail("expected '('");
    ++pos;
    PlanarTree::Node n;
    n.ch.push_back(parse_item());
    skip_ws();
    while (pos < s.size() && s[pos] == ',') {
      ++pos;
      n.ch.push_back(parse_item());
      skip_ws();
    }
    if (pos >= s.size() || s[pos] != ')') fail("expected ')' or ','");
    ++pos;
    return n;
  }
};

}  // namespace

PlanarTree PlanarTree::parse(const std::string& text) {
  Parser p(text);
  p.skip_ws();
  if (p.pos >= text.size() || text[p.pos] != '(') p.fail("a tree starts with '('");
  Node root = p.parse_vertex();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return PlanarTree(std::move(root));
}

PlanarTree PlanarTree::apply_slot_perms(const std::vector<std::vector<int>>& perms) const {
  int next = 0;
  std::function<Node(const Node&)> walk = [&](const Node& n) -> Node {
    if (n.is_leaf()) return n;
    int me = next++;
    const auto& p = perms[me];
    if (p.size() != n.ch.size())
      throw std::invalid_argument("apply_slot_perms: arity mismatch at vertex " +
                                  std::to_string(me));
    std::vector<Node> rebuilt(n.ch.size());
    for (size_t i = 0; i < n.ch.size(); ++i) rebuilt[p[i]] = walk(n.ch[i]);
    Node out;
    out.ch = std::move(rebuilt);
    return out;
  };
  return PlanarTree(walk(root_));
}

namespace {

std::vector<PlanarTree::Node> shapes_exact(int n, int k, int min_arity) {
  std::vector<PlanarTree::Node> out;
  if (k <= 0 || n <= 0) return out;
  for (int r = std::max(1, min_arity); r <= n; ++r) {
    std::vector<int> parts(r, 1);
    std::function<void(int, int)> comp = [&](int slot, int remaining) {
      if (slot == r - 1) {
        parts[slot] = 1 + remaining;
        std::vector<int> vcount(r, 0);
        std::function<void(int, int)> dist = [&](int b, int kv) {
          if (b == r) {
            if (kv != 0) return;
            std::vector<std::vector<PlanarTree::Node>> opts(r);
            for (int i = 0; i < r; ++i) {
              if (vcount[i] == 0) {
                if (parts[i] != 1) return;
                PlanarTree::Node leaf;
                leaf.label = 1;  // placeholder; relabeled by caller
                opts[i] = {leaf};
              } else {
                opts[i] = shapes_exact(parts[i], vcount[i], min_arity);
                if (opts[i].empty()) return;
              }
            }
            std::vector<size_t> pick(r, 0);
            while (true) {
              PlanarTree::Node v;
              for (int i = 0; i < r; ++i) v.ch.push_back(opts[i][pick[i]]);
              out.push_back(std::move(v));
              int i = r - 1;
              for (; i >= 0; --i) {
                if (++pick[i] < opts[i].size()) break;
                pick[i] = 0;
              }
              if (i < 0) break;
            }
            return;
          }
          int lo = parts[b] > 1 ? 1 : 0;
          for (int take = lo; take <= kv; ++take) {
            vcount[b] = take;
            dist(b + 1, kv - take);
          }
          vcount[b] = 0;
        };
        dist(0, k - 1);
        parts[slot] = 1;
        return;
      }
      for (int extra = 0; extra <= remaining; ++extra) {
        parts[slot] = 1 + extra;
        comp(slot + 1, remaining - extra);
        parts[slot] = 1;
      }
    };
    comp(0, n - r);
  }
  return out;
}

void relabel_leaves(PlanarTree::Node& n, const std::vector<int>& labels, int& pos) {
  if (n.is_leaf()) {
    n.label = labels[pos++];
    return;
  }
  for (auto& c : n.ch) relabel_leaves(c, labels, pos);
}

}  // namespace

std::vector<PlanarTree> enumerate_shapes(int n, int kmax, int min_arity) {
  if (n < 1 || kmax < 1) throw std::invalid_argument("enumerate: n >= 1 and kmax >= 1 required");
  std::vector<PlanarTree> out;
  std::vector<int> id_labels(n);
  std::iota(id_labels.begin(), id_labels.end(), 1);
  for (int k = 1; k <= kmax; ++k) {
    for (auto& shape : shapes_exact(n, k, min_arity)) {
      int pos = 0;
      relabel_leaves(shape, id_labels, pos);
      out.push_back(PlanarTree(std::move(shape)));
    }
  }
  return out;
}

std::vector<PlanarTree> enumerate_trees(int n, int kmax, int min_arity) {
  if (n < 1 || kmax < 1) throw std::invalid_argument("enumerate: n >= 1 and kmax >= 1 required");
  std::vector<PlanarTree> out;
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  for (int k = 1; k <= kmax; ++k) {
    auto shapes = shapes_exact(n, k, min_arity);
    for (const auto& shape : shapes) {
      std::vector<int> perm = labels;
      do {
        PlanarTree::Node copy = shape;
        int pos = 0;
        relabel_leaves(copy, perm, pos);
        out.push_back(PlanarTree(std::move(copy)));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return out;
}

bool Subtree::contains(int v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::vector<Subtree> connected_subtrees(const PlanarTree& t) {
  int k = t.n_vertices();
  std::vector<int> par = t.parents();
  std::vector<Subtree> out;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    int tops = 0;
    for (int v = 0; v < k; ++v) {
      if (!(mask & (1u << v))) continue;
      if (par[v] < 0 || !(mask & (1u << par[v]))) ++tops;
    }
    if (tops != 1) continue;
    Subtree s;
    for (int v = 0; v < k; ++v)
      if (mask & (1u << v)) s.vertices.push_back(v);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

struct Contractor {
  const Subtree& s;
  std::vector<int> vmap;
  int old_id = 0;
  int new_id = 0;

  Contractor(const PlanarTree& t, const Subtree& s_) : s(s_), vmap(t.n_vertices(), -1) {}

  void merged_slots(const PlanarTree::Node& n, std::vector<PlanarTree::Node>& slots) {
    int me = old_id++;
    vmap[me] = new_id - 1;
    for (const auto& c : n.ch) {
      if (c.is_leaf()) {
        slots.push_back(c);
      } else if (s.contains(old_id)) {
        merged_slots(c, slots);
      } else {
        slots.push_back(walk(c));
      }
    }
  }

  PlanarTree::Node walk(const PlanarTree::Node& n) {
    if (n.is_leaf()) return n;
    if (s.contains(old_id)) {
      PlanarTree::Node merged;
      ++new_id;
      std::vector<PlanarTree::Node> slots;
      merged_slots(n, slots);
      merged.ch = std::move(slots);
      return merged;
    }
    int me = old_id++;
    vmap[me] = new_id++;
    PlanarTree::Node out;
    for (const auto& c : n.ch) out.ch.push_back(walk(c));
    return out;
  }
};

}  // namespace

std::pair<PlanarTree, std::vector<int>> contract_with_map(const PlanarTree& t, const Subtree& s) {
  if (s.vertices.empty()) throw std::invalid_argument("contract: empty subtree");
  std::vector<int> par = t.parents();
  int tops = 0;
  for (int v : s.vertices) {
    if (v < 0 || v >= t.n_vertices())
      throw std::invalid_argument("contract: vertex id out of range");
    if (par[v] < 0 || !s.contains(par[v])) ++tops;
  }
  if (tops != 1) throw std::invalid_argument("contract: vertex set not connected");
  Contractor c(t, s);
  PlanarTree::Node root = c.walk(t.root());
  return {PlanarTree(std::move(root)), std::move(c.vmap)};
}

PlanarTree contract(const PlanarTree& t, const Subtree& s) {
  return contract_with_map(t, s).first;
}

namespace {

const PlanarTree::Node* find_vertex(const PlanarTree::Node& n, int& id, int want) {
  if (n.is_leaf()) return nullptr;
  if (id == want) return &n;
  ++id;
  for (const auto& c : n.ch) {
    if (c.is_leaf()) continue;
    const PlanarTree::Node* r = find_vertex(c, id, want);
    if (r) return r;
  }
  return nullptr;
}

void skip_branch(const PlanarTree::Node& n, int& old_id) {
  if (n.is_leaf()) return;
  ++old_id;
  for (const auto& c : n.ch) skip_branch(c, old_id);
}

void subtree_slots(const PlanarTree::Node& n, int& old_id, const Subtree& s,
                   std::vector<PlanarTree::Node>& out, int& next_label) {
  ++old_id;  // consume this vertex
  for (const auto& c : n.ch) {
    if (c.is_leaf()) {
      PlanarTree::Node leaf;
      leaf.label = next_label++;
      out.push_back(leaf);
    } else if (s.contains(old_id)) {
      PlanarTree::Node sub;
      std::vector<PlanarTree::Node> slots;
      subtree_slots(c, old_id, s, slots, next_label);
      sub.ch = std::move(slots);
      out.push_back(std::move(sub));
    } else {
      PlanarTree::Node leaf;
      leaf.label = next_label++;
      out.push_back(leaf);
      skip_branch(c, old_id);
    }
  }
}

}  // namespace

PlanarTree subtree_as_tree(const PlanarTree& t, const Subtree& s) {
  int id = 0;
  const PlanarTree::Node* top = find_vertex(t.root(), id, s.vertices.front());
  if (!top) throw std::logic_error("subtree_as_tree: vertex not found");
  PlanarTree::Node root;
  int old_id = s.vertices.front();
  int next_label = 1;
  std::vector<PlanarTree::Node> slots;
  subtree_slots(*top, old_id, s, slots, next_label);
  root.ch = std::move(slots);
  return PlanarTree(std::move(root));
}

std::vector<std::vector<Subtree>> covering_partitions(const PlanarTree& t) {
  int k = t.n_vertices();
  std::vector<int> par = t.parents();
  std::vector<int> edges;
  for (int v = 1; v < k; ++v) edges.push_back(v);
  std::vector<std::vector<Subtree>> out;
  for (unsigned mask = 0; mask < (1u << edges.size()); ++mask) {
    std::vector<int> comp(k);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (comp[x] != x) x = comp[x] = comp[comp[x]];
      return x;
    };
    for (size_t e = 0; e < edges.size(); ++e)
      if (mask & (1u << e)) comp[find(edges[e])] = find(par[edges[e]]);
    std::map<int, Subtree> parts;
    for (int v = 0; v < k; ++v) parts[find(v)].vertices.push_back(v);
    std::vector<Subtree> fam;
    for (auto& [root_v, sub] : parts) {
      std::sort(sub.vertices.begin(), sub.vertices.end());
      fam.push_back(std::move(sub));
    }
    std::sort(fam.begin(), fam.end(), [](const Subtree& a, const Subtree& b) {
      return a.vertices.front() < b.vertices.front();
    });
    out.push_back(std::move(fam));
  }
  return out;
}

namespace {

// Where each vertex/leaf of t lands in apply_slot_perms(t, perms).
struct PermMaps {
  std::vector<int> vmap;  // t vertex id -> new vertex id
  std::vector<int> lmap;  // t leaf position -> new leaf position
};

PermMaps maps_under_perms(const PlanarTree& t, const std::vector<std::vector<int>>& perms) {
  PermMaps m;
  m.vmap.assign(t.n_vertices(), -1);
  m.lmap.assign(t.n_leaves(), -1);
  int t_id = 0, t_leaf = 0;
  // walk assigns: this vertex's new id, and the starting new ids for each
  // child branch according to the permuted slot order.
  std::function<void(const PlanarTree::Node&, int, int)> walk =
      [&](const PlanarTree::Node& n, int new_id, int new_leaf_start) {
        int me = t_id++;
        m.vmap[me] = new_id;
        const auto& p = perms[me];
        int r = (int)n.ch.size();
        // branch sizes in source slot order
        std::vector<int> bv(r), bl(r);
        for (int i = 0; i < r; ++i) {
          auto [cv, cl] = branch_counts(n.ch[i]);
          bv[i] = cv;
          bl[i] = cl;
        }
        // offsets in the NEW order: child at new slot q starts after all
        // branches with new slot < q
        std::vector<int> voff(r, 0), loff(r, 0);
        std::vector<int> inv(r);
        for (int i = 0; i < r; ++i) inv[p[i]] = i;
        int av = 0, al = 0;
        for (int q = 0; q < r; ++q) {
          voff[inv[q]] = av;
          loff[inv[q]] = al;
          av += bv[inv[q]];
          al += bl[inv[q]];
        }
        for (int i = 0; i < r; ++i) {
          const auto& c = n.ch[i];
          if (c.is_leaf()) {
            int pos = t_leaf++;
            m.lmap[pos] = new_leaf_start + loff[i];
          } else {
            walk(c, new_id + 1 + voff[i], new_leaf_start + loff[i]);
          }
        }
      };
  walk(t.root(), 0, 0);
  return m;
}

}  // namespace

std::vector<TreeIso> isomorphisms(const PlanarTree& t, const PlanarTree& u) {
  std::vector<TreeIso> found;
  if (t.n_vertices() != u.n_vertices() || t.n_leaves() != u.n_leaves()) return found;
  int k = t.n_vertices();
  std::vector<int> arities = t.vertex_arities();
  std::vector<std::vector<int>> perms(k);
  for (int v = 0; v < k; ++v) {
    perms[v].resize(arities[v]);
    std::iota(perms[v].begin(), perms[v].end(), 0);
  }
  std::function<void(int)> rec = [&](int v) {
    if (v == k) {
      PlanarTree cand = t.apply_slot_perms(perms);
      if (cand == u) {
        TreeIso iso;
        iso.source = t;
        iso.target = u;
        iso.slot_perm = perms;
        PermMaps m = maps_under_perms(t, perms);
        iso.vertex_map = std::move(m.vmap);
        iso.leaf_map = std::move(m.lmap);
        found.push_back(std::move(iso));
      }
      return;
    }
    do {
      rec(v + 1);
    } while (std::next_permutation(perms[v].begin(), perms[v].end()));
    std::sort(perms[v].begin(), perms[v].end());
  };
  rec(0);
  return found;
}

std::vector<std::pair<PlanarTree, TreeIso>> planar_orbit(const PlanarTree& t) {
  int k = t.n_vertices();
  std::vector<int> arities = t.vertex_arities();
  std::vector<std::vector<int>> perms(k);
  for (int v = 0; v < k; ++v) {
    perms[v].resize(arities[v]);
    std::iota(perms[v].begin(), perms[v].end(), 0);
  }
  std::map<std::string, std::pair<PlanarTree, TreeIso>> seen;
  std::function<void(int)> rec = [&](int v) {
    if (v == k) {
      PlanarTree cand = t.apply_slot_perms(perms);
      std::string key = cand.str();
      if (!seen.count(key)) {
        TreeIso iso;
        iso.source = t;
        iso.target = cand;
        iso.slot_perm = perms;
        PermMaps m = maps_under_perms(t, perms);
        iso.vertex_map = std::move(m.vmap);
        iso.leaf_map = std::move(m.lmap);
        seen.emplace(std::move(key), std::make_pair(std::move(cand), std::move(iso)));
      }
      return;
    }
    do {
      rec(v + 1);
    } while (std::next_permutation(perms[v].begin(), perms[v].end()));
    std::sort(perms[v].begin(), perms[v].end());
  };
  rec(0);
  std::vector<std::pair<PlanarTree, TreeIso>> out;
  out.reserve(seen.size());
  for (auto& [key, val] : seen) out.push_back(std::move(val));
  return out;
}

}  // namespace shopd
