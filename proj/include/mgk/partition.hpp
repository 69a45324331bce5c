#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mgk/error.hpp"

namespace mgk {

using Elem = std::uint32_t;

/// Disjoint-set forest whose roots are always the least element of their set,
/// so that reading off roots gives canonical partition representatives.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : _parent(n) {
    std::iota(_parent.begin(), _parent.end(), Elem{0});
  }

  std::size_t size() const noexcept { return _parent.size(); }

  Elem find(Elem x) {
    Elem root = x;
    while (_parent[root] != root) {
      root = _parent[root];
    }
    while (_parent[x] != root) {
      Elem next = _parent[x];
      _parent[x] = root;
      x = next;
    }
    return root;
  }

  /// Returns true when a and b were in different sets.
  bool unite(Elem a, Elem b) {
    Elem ra = find(a);
    Elem rb = find(b);
    if (ra == rb) {
      return false;
    }
    if (ra < rb) {
      _parent[rb] = ra;
    } else {
      _parent[ra] = rb;
    }
    return true;
  }

  std::vector<Elem> representatives() {
    std::vector<Elem> rep(_parent.size());
    for (Elem i = 0; i < rep.size(); ++i) {
      rep[i] = find(i);
    }
    return rep;
  }

 private:
  std::vector<Elem> _parent;
};

/// An equivalence relation on 0..n-1 stored by least-element representatives.
/// Equal partitions have equal arrays.
class Partition {
 public:
  Partition() = default;

  /// Accepts any representative array satisfying the canonical invariants;
  /// throws ValidationError otherwise.
  explicit Partition(std::vector<Elem> representatives)
      : _rep(std::move(representatives)) {
    for (Elem i = 0; i < _rep.size(); ++i) {
      if (_rep[i] > i || _rep[_rep[i]] != _rep[i]) {
        throw ValidationError("partition: representative array is not canonical at index "
                              + std::to_string(i));
      }
    }
  }

  /// Δ, the finest partition.
  static Partition discrete(std::size_t n) {
    std::vector<Elem> rep(n);
    std::iota(rep.begin(), rep.end(), Elem{0});
    return from_canonical(std::move(rep));
  }

  /// ∇, the coarsest partition.
  static Partition total(std::size_t n) {
    return from_canonical(std::vector<Elem>(n, 0));
  }

  /// Partition whose blocks are the fibres of an arbitrary labelling.
  template <typename Label>
  static Partition from_labels(std::vector<Label> const& labels) {
    std::vector<Elem> rep(labels.size());
    std::map<Label, Elem> first;
    for (Elem i = 0; i < labels.size(); ++i) {
      rep[i] = first.try_emplace(labels[i], i).first->second;
    }
    return from_canonical(std::move(rep));
  }

  static Partition from_union_find(UnionFind& uf) {
    return from_canonical(uf.representatives());
  }

  /// Least equivalence relation containing the given pairs.
  static Partition generated_by(std::size_t n,
                                std::vector<std::pair<Elem, Elem>> const& pairs) {
    UnionFind uf(n);
    for (auto [a, b] : pairs) {
      uf.unite(a, b);
    }
    return from_union_find(uf);
  }

  std::size_t size() const noexcept { return _rep.size(); }
  Elem representative(Elem i) const { return _rep[i]; }
  std::vector<Elem> const& representatives() const noexcept { return _rep; }
  bool related(Elem a, Elem b) const { return _rep[a] == _rep[b]; }

  bool is_discrete() const {
    for (Elem i = 0; i < _rep.size(); ++i) {
      if (_rep[i] != i) {
        return false;
      }
    }
    return true;
  }

  bool is_total() const {
    return std::all_of(_rep.begin(), _rep.end(), [](Elem r) { return r == 0; });
  }

  std::size_t block_count() const {
    std::size_t count = 0;
    for (Elem i = 0; i < _rep.size(); ++i) {
      count += (_rep[i] == i);
    }
    return count;
  }

  /// Blocks ordered by least element, each block sorted.
  std::vector<std::vector<Elem>> blocks() const {
    std::vector<std::vector<Elem>> out;
    std::vector<std::size_t> slot(_rep.size());
    for (Elem i = 0; i < _rep.size(); ++i) {
      if (_rep[i] == i) {
        slot[i] = out.size();
        out.emplace_back();
      }
      out[slot[_rep[i]]].push_back(i);
    }
    return out;
  }

  /// Index of the block of each element, blocks numbered by least element.
  std::vector<Elem> block_indices() const {
    std::vector<Elem> index(_rep.size());
    Elem next = 0;
    for (Elem i = 0; i < _rep.size(); ++i) {
      index[i] = (_rep[i] == i) ? next++ : index[_rep[i]];
    }
    return index;
  }

  /// Number of related ordered pairs, i.e. the cardinality as a relation.
  std::size_t pair_count() const {
    std::vector<std::size_t> sizes(_rep.size(), 0);
    for (Elem r : _rep) {
      ++sizes[r];
    }
    std::size_t total = 0;
    for (auto s : sizes) {
      total += s * s;
    }
    return total;
  }

  /// All related ordered pairs in lexicographic order.
  std::vector<std::pair<Elem, Elem>> pairs() const {
    std::vector<std::pair<Elem, Elem>> out;
    out.reserve(pair_count());
    auto bl = blocks();
    std::vector<std::size_t> which(_rep.size());
    for (std::size_t b = 0; b < bl.size(); ++b) {
      for (Elem x : bl[b]) {
        which[x] = b;
      }
    }
    for (Elem a = 0; a < _rep.size(); ++a) {
      for (Elem b : bl[which[a]]) {
        out.emplace_back(a, b);
      }
    }
    return out;
  }

  /// Refinement order: *this ≤ other iff every related pair here is related there.
  bool leq(Partition const& other) const {
    if (other.size() != size()) {
      throw PreconditionError("partition comparison: carrier sizes differ");
    }
    for (Elem i = 0; i < _rep.size(); ++i) {
      if (other._rep[i] != other._rep[_rep[i]]) {
        return false;
      }
    }
    return true;
  }

  bool operator==(Partition const&) const = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < _rep.size(); ++i) {
      if (i != 0) {
        s += ',';
      }
      s += std::to_string(_rep[i]);
    }
    return s + "]";
  }

  /// Parses the "[0,1,0,1]" text form.
  static Partition parse(std::string const& text) {
    std::vector<Elem> rep;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) {
        ++i;
      }
    };
    skip();
    if (i >= text.size() || text[i] != '[') {
      throw ParseError("partition text must start with '['");
    }
    ++i;
    skip();
    if (i < text.size() && text[i] == ']') {
      throw ParseError("partition text is empty");
    }
    while (true) {
      skip();
      std::size_t start = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        ++i;
      }
      if (start == i) {
        throw ParseError("partition text: expected a number at offset "
                         + std::to_string(start));
      }
      rep.push_back(static_cast<Elem>(std::stoul(text.substr(start, i - start))));
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ']') {
        break;
      }
      throw ParseError("partition text: expected ',' or ']' at offset "
                       + std::to_string(i));
    }
    return Partition(std::move(rep));
  }

 private:
  static Partition from_canonical(std::vector<Elem> rep) {
    Partition p;
    p._rep = std::move(rep);
    return p;
  }

  std::vector<Elem> _rep;
};

}  // namespace mgk
