#pragma once

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

#include "relik/error.hpp"

namespace relik {

using Bits = boost::dynamic_bitset<std::uint64_t>;

/// Index of a world inside one carrier. Only meaningful together with that carrier.
struct WorldId {
  std::size_t index = 0;

  friend constexpr auto operator<=>(WorldId, WorldId) = default;
};

/// A subset of a finite carrier of `universe()` worlds.
class WorldSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = WorldId;
    using difference_type = std::ptrdiff_t;
    using pointer = const WorldId*;
    using reference = WorldId;

    iterator() = default;
    iterator(const Bits* bits, std::size_t pos) : bits_(bits), pos_(pos) {}

    WorldId operator*() const { return WorldId{pos_}; }
    iterator& operator++() {
      pos_ = bits_->find_next(pos_);
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.pos_ == b.pos_; }

   private:
    const Bits* bits_ = nullptr;
    std::size_t pos_ = Bits::npos;
  };

  WorldSet() = default;
  explicit WorldSet(std::size_t universe) : bits_(universe) {}
  explicit WorldSet(Bits bits) : bits_(std::move(bits)) {}

  WorldSet(std::size_t universe, std::initializer_list<std::size_t> members) : bits_(universe) {
    for (auto m : members) insert(WorldId{m});
  }

  static WorldSet all(std::size_t universe) {
    WorldSet s(universe);
    s.bits_.set();
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  bool contains(WorldId w) const { return w.index < bits_.size() && bits_.test(w.index); }

  void insert(WorldId w) {
    if (w.index >= bits_.size()) {
      throw Error(Errc::foreign_world, "world index " + std::to_string(w.index) +
                                           " outside carrier of size " +
                                           std::to_string(bits_.size()));
    }
    bits_.set(w.index);
  }
  void erase(WorldId w) {
    if (w.index < bits_.size()) bits_.reset(w.index);
  }

  bool is_subset_of(const WorldSet& other) const { return bits_.is_subset_of(other.bits_); }
  bool intersects(const WorldSet& other) const { return bits_.intersects(other.bits_); }

  const Bits& bits() const { return bits_; }

  iterator begin() const { return iterator(&bits_, bits_.find_first()); }
  iterator end() const { return iterator(&bits_, Bits::npos); }

  friend WorldSet operator|(const WorldSet& a, const WorldSet& b) { return WorldSet(a.bits_ | b.bits_); }
  friend WorldSet operator&(const WorldSet& a, const WorldSet& b) { return WorldSet(a.bits_ & b.bits_); }
  friend WorldSet operator-(const WorldSet& a, const WorldSet& b) { return WorldSet(a.bits_ - b.bits_); }
  friend bool operator==(const WorldSet& a, const WorldSet& b) { return a.bits_ == b.bits_; }

 private:
  Bits bits_;
};

/// Dense binary relation over {0, ..., n-1}; row(i) holds every j with (i, j) in the relation.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : rows_(n, Bits(n)) {}

  static Relation identity(std::size_t n) {
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i) r.rows_[i].set(i);
    return r;
  }

  std::size_t size() const { return rows_.size(); }
  bool operator()(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
  void set(std::size_t i, std::size_t j, bool value = true) { rows_[i].set(j, value); }
  const Bits& row(std::size_t i) const { return rows_[i]; }

  std::size_t pair_count() const {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.count();
    return total;
  }

  Relation transpose() const {
    Relation t(size());
    for (std::size_t i = 0; i < size(); ++i)
      for (auto j = rows_[i].find_first(); j != Bits::npos; j = rows_[i].find_next(j)) t.set(j, i);
    return t;
  }

  bool is_reflexive() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (!rows_[i].test(i)) return false;
    return true;
  }

  bool is_irreflexive() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (rows_[i].test(i)) return false;
    return true;
  }

  // (i, j) and (j, k) imply (i, k)  <=>  row(j) is a subset of row(i) whenever (i, j).
  bool is_transitive() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (auto j = rows_[i].find_first(); j != Bits::npos; j = rows_[i].find_next(j))
        if (!rows_[j].is_subset_of(rows_[i])) return false;
    return true;
  }

  /// Warshall closure; the result is the smallest transitive relation containing this one.
  Relation transitive_closure() const {
    Relation c = *this;
    for (std::size_t k = 0; k < size(); ++k)
      for (std::size_t i = 0; i < size(); ++i)
        if (c.rows_[i].test(k)) c.rows_[i] |= c.rows_[k];
    return c;
  }

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::vector<Bits> rows_;
};

}  // namespace relik
