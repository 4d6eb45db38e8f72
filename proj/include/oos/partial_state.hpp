// Copyright 2026 The oos Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Full and partial state vectors over a finite set of costly observations.
//
// Observations are identified by a 0-based index in [0, D). A partial state
// stores one slot per observation; unobserved slots hold kUnknown. The
// StateSpace owns the per-observation alphabets and provides the dense
// encodings used as hash keys by the counter store and planners.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oos {

using Symbol = int;
using ObservationId = int;
using StateVector = std::vector<Symbol>;

inline constexpr Symbol kUnknown = std::numeric_limits<Symbol>::min();
inline constexpr int kMaxObservations = 32;

/// Set of observation ids, stored as a bitmask. Ordering (operator<) is the
/// canonical enumeration order: by cardinality, then lexicographic by the
/// sorted member list.
class ObservationSet {
 public:
  constexpr ObservationSet() = default;
  constexpr explicit ObservationSet(std::uint32_t mask) : mask_(mask) {}
  ObservationSet(std::initializer_list<ObservationId> ids) {
    for (ObservationId i : ids) insert(i);
  }

  static ObservationSet full(int num_observations) {
    return ObservationSet(num_observations >= 32 ? ~std::uint32_t{0}
                                                 : (std::uint32_t{1} << num_observations) - 1);
  }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(ObservationId i) const { return (mask_ >> i) & 1u; }
  constexpr bool is_subset_of(ObservationSet other) const {
    return (mask_ & ~other.mask_) == 0;
  }

  void insert(ObservationId i) {
    if (i < 0 || i >= kMaxObservations) throw std::out_of_range("observation id out of range");
    mask_ |= std::uint32_t{1} << i;
  }

  std::vector<ObservationId> members() const {
    std::vector<ObservationId> out;
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  friend constexpr bool operator==(ObservationSet, ObservationSet) = default;
  friend bool operator<(ObservationSet a, ObservationSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  }

 private:
  std::uint32_t mask_ = 0;
};

inline std::string to_string(ObservationSet set) {
  std::string out = "{";
  bool first = true;
  for (ObservationId i : set.members()) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

/// A state vector with missing entries. Entries are kept densely, one per
/// observation, so equality and hashing are canonical.
class PartialState {
 public:
  PartialState() = default;
  explicit PartialState(int num_observations) : values_(num_observations, kUnknown) {}
  explicit PartialState(std::vector<Symbol> values) : values_(std::move(values)) {}

  int num_observations() const { return static_cast<int>(values_.size()); }
  bool has(ObservationId i) const { return values_.at(i) != kUnknown; }
  Symbol at(ObservationId i) const { return values_.at(i); }
  const std::vector<Symbol>& values() const { return values_; }

  ObservationSet domain() const {
    ObservationSet out;
    for (int i = 0; i < num_observations(); ++i)
      if (values_[i] != kUnknown) out.insert(i);
    return out;
  }
  int domain_size() const {
    return static_cast<int>(std::count_if(values_.begin(), values_.end(),
                                          [](Symbol s) { return s != kUnknown; }));
  }

  /// Entries as (id, symbol) pairs ordered by id.
  std::vector<std::pair<ObservationId, Symbol>> entries() const {
    std::vector<std::pair<ObservationId, Symbol>> out;
    for (int i = 0; i < num_observations(); ++i)
      if (values_[i] != kUnknown) out.emplace_back(i, values_[i]);
    return out;
  }

  void set(ObservationId i, Symbol x) { values_.at(i) = x; }

  friend bool operator==(const PartialState&, const PartialState&) = default;

 private:
  std::vector<Symbol> values_;
};

inline std::string to_string(const PartialState& s) {
  std::string out = "(";
  for (int i = 0; i < s.num_observations(); ++i) {
    if (i) out += ',';
    out += s.has(i) ? std::to_string(s.at(i)) : std::string("?");
  }
  return out + ")";
}

struct PartialStateHash {
  std::size_t operator()(const PartialState& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (Symbol v : s.values()) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

inline ObservationSet domain(const PartialState& s) { return s.domain(); }

/// True iff phi agrees with psi on every observed entry of psi.
inline bool is_consistent(const StateVector& phi, const PartialState& psi) {
  if (static_cast<int>(phi.size()) != psi.num_observations())
    throw std::invalid_argument("is_consistent: dimension mismatch");
  for (int i = 0; i < psi.num_observations(); ++i)
    if (psi.has(i) && psi.at(i) != phi[i]) return false;
  return true;
}

/// True iff `small` is a restriction of `big` (big ⪰ small).
inline bool is_substate(const PartialState& big, const PartialState& small) {
  if (big.num_observations() != small.num_observations()) return false;
  for (int i = 0; i < small.num_observations(); ++i)
    if (small.has(i) && (!big.has(i) || big.at(i) != small.at(i))) return false;
  return true;
}

inline PartialState as_partial(const StateVector& phi) { return PartialState(phi); }

/// Reveal the entries of phi that lie in `set`.
inline PartialState restrict_to(const StateVector& phi, ObservationSet set) {
  PartialState out(static_cast<int>(phi.size()));
  for (int i = 0; i < static_cast<int>(phi.size()); ++i)
    if (set.contains(i)) out.set(i, phi[i]);
  return out;
}

inline PartialState restrict_to(const PartialState& psi, ObservationSet set) {
  PartialState out(psi.num_observations());
  for (int i = 0; i < psi.num_observations(); ++i)
    if (set.contains(i) && psi.has(i)) out.set(i, psi.at(i));
  return out;
}

/// All 2^|dom(psi)| restrictions of psi, ordered like enumerate of subsets of
/// the domain by increasing submask.
inline std::vector<PartialState> substates(const PartialState& psi) {
  const std::uint32_t dom = psi.domain().mask();
  std::vector<PartialState> out;
  out.reserve(std::size_t{1} << std::popcount(dom));
  // Standard submask walk, collected then reversed to start at the empty set.
  for (std::uint32_t sub = dom;; sub = (sub - 1) & dom) {
    out.push_back(restrict_to(psi, ObservationSet(sub)));
    if (sub == 0) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

/// psi ∪ (i, x). Extending an already observed id is a logic error.
inline PartialState extend(const PartialState& psi, ObservationId i, Symbol x) {
  if (i < 0 || i >= psi.num_observations()) throw std::out_of_range("extend: bad observation id");
  if (psi.has(i)) throw std::logic_error("extend: observation already present in partial state");
  if (x == kUnknown) throw std::invalid_argument("extend: unknown symbol");
  PartialState out = psi;
  out.set(i, x);
  return out;
}

/// All subsets of {0..D-1} with at most m members, ordered by size and then
/// lexicographically by member list.
inline std::vector<ObservationSet> enumerate_obs_sets(int num_observations, int max_size) {
  if (num_observations < 0 || num_observations > 24)
    throw std::invalid_argument("enumerate_obs_sets: unsupported observation count");
  if (max_size < 0 || max_size > num_observations)
    throw std::invalid_argument("enumerate_obs_sets: require 0 <= m <= D");
  std::vector<ObservationSet> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << num_observations); ++mask)
    if (std::popcount(mask) <= max_size) out.emplace_back(mask);
  std::sort(out.begin(), out.end());
  return out;
}

/// Per-observation alphabets and the dense encodings built on them.
///
/// encode() maps a partial state to a mixed-radix integer with radix
/// |X_i| + 1 per observation (digit 0 is "?"); it is unique over all partial
/// states and serves as the key of every counter map.
class StateSpace {
 public:
  StateSpace() = default;
  explicit StateSpace(std::vector<std::vector<Symbol>> alphabets) : alphabets_(std::move(alphabets)) {
    if (alphabets_.size() > static_cast<std::size_t>(kMaxObservations))
      throw std::invalid_argument("StateSpace: too many observations");
    strides_.resize(alphabets_.size());
    full_strides_.resize(alphabets_.size());
    lookup_min_.resize(alphabets_.size());
    lookup_.resize(alphabets_.size());
    std::uint64_t stride = 1;
    std::uint64_t full_stride = 1;
    for (int i = num_observations() - 1; i >= 0; --i) {
      const auto& alpha = alphabets_[i];
      if (alpha.empty()) throw std::invalid_argument("StateSpace: empty alphabet");
      for (std::size_t a = 0; a < alpha.size(); ++a) {
        if (alpha[a] == kUnknown) throw std::invalid_argument("StateSpace: reserved symbol");
        for (std::size_t b = 0; b < a; ++b)
          if (alpha[a] == alpha[b]) throw std::invalid_argument("StateSpace: duplicate symbol");
      }
      const auto [lo, hi] = std::minmax_element(alpha.begin(), alpha.end());
      if (static_cast<long long>(*hi) - *lo > 4096)
        throw std::invalid_argument("StateSpace: symbol range too wide");
      lookup_min_[i] = *lo;
      lookup_[i].assign(static_cast<std::size_t>(*hi - *lo + 1), -1);
      for (std::size_t a = 0; a < alpha.size(); ++a) lookup_[i][alpha[a] - *lo] = static_cast<int>(a);

      strides_[i] = stride;
      full_strides_[i] = full_stride;
      const std::uint64_t radix = alpha.size() + 1;
      if (stride > std::numeric_limits<std::uint64_t>::max() / radix)
        throw std::invalid_argument("StateSpace: partial-state code overflows 64 bits");
      stride *= radix;
      full_stride *= alpha.size();
    }
    num_codes_ = stride;
    num_states_ = full_stride;
  }

  /// D binary observations with alphabet {0, 1}.
  static StateSpace binary(int num_observations) {
    return StateSpace(std::vector<std::vector<Symbol>>(num_observations, {0, 1}));
  }

  int num_observations() const { return static_cast<int>(alphabets_.size()); }
  const std::vector<std::vector<Symbol>>& alphabets() const { return alphabets_; }
  const std::vector<Symbol>& alphabet(ObservationId i) const { return alphabets_.at(i); }
  int alphabet_size(ObservationId i) const { return static_cast<int>(alphabets_.at(i).size()); }

  /// Number of full state vectors, ∏|X_i|.
  std::uint64_t num_states() const { return num_states_; }
  /// Number of distinct partial-state codes, ∏(|X_i| + 1).
  std::uint64_t num_codes() const { return num_codes_; }

  /// Position of symbol x in alphabet i, or -1 if x is not a member.
  int symbol_index(ObservationId i, Symbol x) const {
    const long long off = static_cast<long long>(x) - lookup_min_[i];
    if (off < 0 || off >= static_cast<long long>(lookup_[i].size())) return -1;
    return lookup_[i][static_cast<std::size_t>(off)];
  }

  bool is_member(ObservationId i, Symbol x) const { return symbol_index(i, x) >= 0; }

  bool is_valid(const StateVector& phi) const {
    if (static_cast<int>(phi.size()) != num_observations()) return false;
    for (int i = 0; i < num_observations(); ++i)
      if (!is_member(i, phi[i])) return false;
    return true;
  }

  bool is_valid(const PartialState& psi) const {
    if (psi.num_observations() != num_observations()) return false;
    for (int i = 0; i < num_observations(); ++i)
      if (psi.has(i) && !is_member(i, psi.at(i))) return false;
    return true;
  }

  /// Build a partial state from optional symbols, validating membership.
  PartialState partial(const std::vector<std::optional<Symbol>>& entries) const {
    if (static_cast<int>(entries.size()) != num_observations())
      throw std::invalid_argument("partial: wrong number of entries");
    PartialState out(num_observations());
    for (int i = 0; i < num_observations(); ++i) {
      if (!entries[i]) continue;
      if (!is_member(i, *entries[i])) throw std::invalid_argument("partial: symbol not in alphabet");
      out.set(i, *entries[i]);
    }
    return out;
  }

  PartialState empty_partial() const { return PartialState(num_observations()); }

  std::uint64_t encode(const PartialState& psi) const {
    std::uint64_t code = 0;
    for (int i = 0; i < num_observations(); ++i) {
      if (!psi.has(i)) continue;
      const int idx = symbol_index(i, psi.at(i));
      if (idx < 0) throw std::invalid_argument("encode: symbol not in alphabet");
      code += static_cast<std::uint64_t>(idx + 1) * strides_[i];
    }
    return code;
  }

  std::uint64_t encode(const StateVector& phi) const {
    std::uint64_t code = 0;
    for (int i = 0; i < num_observations(); ++i)
      code += static_cast<std::uint64_t>(symbol_index(i, phi[i]) + 1) * strides_[i];
    return code;
  }

  PartialState decode(std::uint64_t code) const {
    PartialState out(num_observations());
    for (int i = 0; i < num_observations(); ++i) {
      const auto digit = static_cast<int>((code / strides_[i]) % (alphabets_[i].size() + 1));
      if (digit > 0) out.set(i, alphabets_[i][digit - 1]);
    }
    return out;
  }

  /// Row-major index of a full state vector: observation 0 is the most
  /// significant digit, symbols follow alphabet order.
  std::uint64_t state_index(const StateVector& phi) const {
    std::uint64_t idx = 0;
    for (int i = 0; i < num_observations(); ++i) {
      const int s = symbol_index(i, phi[i]);
      if (s < 0) throw std::invalid_argument("state_index: symbol not in alphabet");
      idx += static_cast<std::uint64_t>(s) * full_strides_[i];
    }
    return idx;
  }

  StateVector state_at(std::uint64_t index) const {
    StateVector out(num_observations());
    for (int i = 0; i < num_observations(); ++i)
      out[i] = alphabets_[i][(index / full_strides_[i]) % alphabets_[i].size()];
    return out;
  }

  /// |Ψ⁺(I)| = ∏_{i∈I} |X_i|.
  std::uint64_t count_partials(ObservationSet set) const {
    std::uint64_t n = 1;
    for (ObservationId i : set.members()) n *= alphabets_.at(i).size();
    return n;
  }

  /// Rank of psi within enumerate_partials(dom(psi)).
  std::size_t rank_within_domain(const PartialState& psi) const {
    std::size_t rank = 0;
    for (int i = 0; i < num_observations(); ++i) {
      if (!psi.has(i)) continue;
      rank = rank * alphabets_[i].size() + static_cast<std::size_t>(symbol_index(i, psi.at(i)));
    }
    return rank;
  }

  /// Code of psi with observation i forced to "?".
  std::uint64_t code_without(std::uint64_t code, ObservationId i) const {
    const std::uint64_t digit = (code / strides_[i]) % (alphabets_[i].size() + 1);
    return code - digit * strides_[i];
  }

  friend bool operator==(const StateSpace& a, const StateSpace& b) { return a.alphabets_ == b.alphabets_; }

 private:
  std::vector<std::vector<Symbol>> alphabets_;
  std::vector<std::uint64_t> strides_;
  std::vector<std::uint64_t> full_strides_;
  std::vector<Symbol> lookup_min_;
  std::vector<std::vector<int>> lookup_;
  std::uint64_t num_codes_ = 1;
  std::uint64_t num_states_ = 1;
};

/// Ψ⁺(I): every partial state with domain exactly I, lexicographic by id then
/// by alphabet order of the symbol.
inline std::vector<PartialState> enumerate_partials(const StateSpace& space, ObservationSet set) {
  const std::vector<ObservationId> ids = set.members();
  for (ObservationId i : ids)
    if (i >= space.num_observations()) throw std::out_of_range("enumerate_partials: bad observation id");
  std::vector<PartialState> out;
  out.reserve(space.count_partials(set));
  std::vector<std::size_t> digits(ids.size(), 0);
  PartialState cur(space.num_observations());
  for (std::size_t k = 0; k < ids.size(); ++k) cur.set(ids[k], space.alphabet(ids[k])[0]);
  while (true) {
    out.push_back(cur);
    std::size_t k = ids.size();
    while (k > 0) {
      --k;
      const auto& alpha = space.alphabet(ids[k]);
      if (++digits[k] < alpha.size()) {
        cur.set(ids[k], alpha[digits[k]]);
        break;
      }
      digits[k] = 0;
      cur.set(ids[k], alpha[0]);
      if (k == 0) return out;
    }
    if (ids.empty()) return out;
  }
}

/// Ψ⁺(psi, i): the one-step extensions of psi by observation i.
inline std::vector<PartialState> extensions(const StateSpace& space, const PartialState& psi, ObservationId i) {
  std::vector<PartialState> out;
  out.reserve(space.alphabet(i).size());
  for (Symbol x : space.alphabet(i)) out.push_back(extend(psi, i, x));
  return out;
}

/// Ψ_tot = Σ_{I ∈ P≤m(D)} |Ψ⁺(I)|.
inline std::uint64_t count_partials_up_to(const StateSpace& space, int max_size) {
  std::uint64_t total = 0;
  for (ObservationSet set : enumerate_obs_sets(space.num_observations(), max_size))
    total += space.count_partials(set);
  return total;
}

}  // namespace oos

template <>
struct std::hash<oos::PartialState> : oos::PartialStateHash {};
