#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcn {

/// Thrown when a calculus definition is malformed or violates the
/// relation-algebra invariants.
class CalculusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A disjunction of basic relations, stored as a bit vector (bit k set means
/// basic relation k is allowed). The empty relation signals inconsistency.
class Relation {
 public:
  static constexpr int kMaxBasics = 32;

  constexpr Relation() = default;
  constexpr explicit Relation(std::uint32_t bits) : bits_(bits) {}

  static constexpr Relation single(int id) { return Relation(std::uint32_t{1} << id); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int count() const { return std::popcount(bits_); }
  constexpr bool is_singleton() const { return std::has_single_bit(bits_); }
  constexpr bool contains(int id) const { return (bits_ >> id) & 1u; }
  constexpr bool contains(Relation other) const { return (bits_ & other.bits_) == other.bits_; }
  /// Index of the lowest basic relation; undefined on the empty relation.
  constexpr int first() const { return std::countr_zero(bits_); }

  constexpr Relation with(int id) const { return Relation(bits_ | (std::uint32_t{1} << id)); }
  constexpr Relation without(int id) const { return Relation(bits_ & ~(std::uint32_t{1} << id)); }
  constexpr Relation minus(Relation other) const { return Relation(bits_ & ~other.bits_); }

  friend constexpr Relation operator&(Relation a, Relation b) { return Relation(a.bits_ & b.bits_); }
  friend constexpr Relation operator|(Relation a, Relation b) { return Relation(a.bits_ | b.bits_); }
  constexpr Relation& operator&=(Relation o) { bits_ &= o.bits_; return *this; }
  constexpr Relation& operator|=(Relation o) { bits_ |= o.bits_; return *this; }
  friend constexpr bool operator==(Relation, Relation) = default;

  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::uint32_t rest = bits_; rest != 0; rest &= rest - 1) f(std::countr_zero(rest));
  }

  std::vector<int> ids() const;

 private:
  std::uint32_t bits_ = 0;
};

struct BasicRelation {
  int id = 0;
  std::string symbol;
  int inverse_id = 0;
  /// Verb phrase used when a query about this relation is put to a person,
  /// e.g. "overlap" in "Does 'A' overlap 'B'?".
  std::string phrase;
};

/// A finite relation algebra: basic relations, converse map, identity and the
/// p x p composition table. Immutable once constructed.
class Calculus {
 public:
  /// `table` is row-major: table[a * p + b] = composition of basics a and b.
  /// Throws CalculusError when any algebraic invariant fails.
  Calculus(std::string name, std::vector<BasicRelation> basics, int identity,
           std::vector<Relation> table);

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(basics_.size()); }
  int identity() const { return identity_; }
  Relation universal() const { return universal_; }
  std::span<const BasicRelation> basics() const { return basics_; }
  const BasicRelation& basic(int id) const { return basics_.at(static_cast<std::size_t>(id)); }
  const std::string& symbol(int id) const { return basic(id).symbol; }
  std::optional<int> find(std::string_view symbol) const;

  Relation compose_basic(int a, int b) const { return table_[static_cast<std::size_t>(a * size() + b)]; }
  Relation compose(Relation r1, Relation r2) const;
  /// compose(r1, r2) & mask, stopping as soon as every bit of mask has a
  /// supporting pair and skipping the scan when an operand is universal.
  Relation compose_within(Relation r1, Relation r2, Relation mask) const;

  int inverse(int id) const { return basics_[static_cast<std::size_t>(id)].inverse_id; }
  Relation inverse(Relation r) const;

  /// Sum over all basics b' of |compose(b, b')|. Lower means more restrictive.
  int weight(int id) const { return weights_[static_cast<std::size_t>(id)]; }

  /// Parses symbols into a relation; throws CalculusError on unknown symbols.
  Relation parse(std::span<const std::string> symbols) const;
  std::vector<std::string> symbols(Relation r) const;
  /// "{P, O, M}" style rendering.
  std::string format(Relation r) const;

  std::string to_json() const;

 private:
  void validate() const;

  std::string name_;
  std::vector<BasicRelation> basics_;
  int identity_ = 0;
  std::vector<Relation> table_;
  Relation universal_;
  std::vector<int> weights_;
  // compose(universal, {b}) == universal == compose({b}, universal) for every b.
  bool universal_absorbs_ = false;
};

using CalculusPtr = std::shared_ptr<const Calculus>;

/// Built-in calculi: "ia" (Allen, p=13), "rcc8" (p=8), "point" (p=3).
/// Anything else is treated as a path to a JSON calculus definition.
CalculusPtr load_calculus(std::string_view name_or_path);
CalculusPtr parse_calculus_json(std::string_view text);

CalculusPtr interval_algebra();
CalculusPtr rcc8();
CalculusPtr point_algebra();

}  // namespace qcn
