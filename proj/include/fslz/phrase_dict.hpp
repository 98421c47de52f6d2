#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "fslz/error.hpp"

namespace fslz {

// Bounded set of numbered phrase slots with least-recently-used eviction.
// Slots are numbered 1..capacity and handed out lowest-number-first; a
// released slot is reused by the next insert.  Both encoders and decoders
// drive one of these, so the slot numbering must stay deterministic.
class LruSlots {
 public:
  explicit LruSlots(uint64_t capacity);

  uint64_t capacity() const { return capacity_; }
  uint64_t active_count() const { return active_; }
  bool full() const { return active_ == capacity_; }
  bool active(uint64_t slot) const;

  // Least recently used active slot; requires active_count() > 0.
  uint64_t lru_slot() const;

  // Inserts a phrase as the most recent entry and returns its slot.
  // Requires a free slot (callers release the LRU slot first when full).
  uint64_t insert(std::vector<uint32_t> phrase);

  // Removes a slot from the active set; its number is reused next.
  void release(uint64_t slot);

  // Moves an active slot to most-recent position.
  void touch(uint64_t slot);

  std::span<const uint32_t> phrase(uint64_t slot) const;

  // Overwrites the final symbol of a slot's phrase.  Used by decoders that
  // insert an entry whose last symbol is not yet known.
  void set_phrase_back(uint64_t slot, uint32_t symbol);

 private:
  void check_active(uint64_t slot) const;
  void unlink(uint64_t slot);
  void push_front(uint64_t slot);

  uint64_t capacity_;
  uint64_t active_ = 0;
  uint64_t next_unused_ = 1;
  uint64_t released_ = 0;  // at most one slot pending reuse
  std::vector<std::vector<uint32_t>> phrases_;  // indexed by slot
  std::vector<uint64_t> prev_, next_;           // recency list, 0 = none
  uint64_t head_ = 0, tail_ = 0;                // head = most recent
};

// Result of a longest-match query.
struct MatchRef {
  enum class Kind { None, Slot, Permanent };
  Kind kind = Kind::None;
  uint64_t id = 0;      // slot number or permanent id
  uint64_t length = 0;  // matched symbol count
};

// Phrase dictionary backing the bounded-dictionary codecs: a trie over
// phrases for longest-match queries, LRU slot bookkeeping for evictable
// entries, and optional permanent entries that never move or evict.
// Unmarked trie nodes survive as long as a marked descendant needs them
// and are pruned once no entry passes through.
class PhraseDictionary {
 public:
  PhraseDictionary(uint64_t capacity, uint64_t max_len);

  uint64_t capacity() const { return slots_.capacity(); }
  uint64_t max_len() const { return max_len_; }
  uint64_t active_count() const { return slots_.active_count(); }

  // Registers a never-evicted entry and returns its id (1-based, in
  // insertion order).  Permanent entries ignore capacity.
  uint64_t insert_permanent(std::span<const uint32_t> phrase);

  // Longest prefix of `remaining` that is an active slot or a permanent
  // entry.  Ties between a slot and a permanent entry of equal length
  // cannot occur (phrases are unique among active entries).
  MatchRef longest_active_match(std::span<const uint32_t> remaining) const;

  // Inserts an evictable phrase, evicting the least recent slot when
  // full.  Returns the assigned slot, or 0 when capacity is zero (entry
  // not stored).  The phrase must not already be an active entry.
  uint64_t insert_with_eviction(std::span<const uint32_t> phrase);

  void touch(uint64_t slot) { slots_.touch(slot); }
  bool slot_active(uint64_t slot) const { return slots_.active(slot); }
  std::span<const uint32_t> slot_phrase(uint64_t slot) const {
    return slots_.phrase(slot);
  }

  // Introspection used by tests.
  bool node_exists(std::span<const uint32_t> phrase) const;
  bool entry_active(std::span<const uint32_t> phrase) const;
  void check_invariants() const;  // throws Error on violation

 private:
  struct Node {
    Node* parent = nullptr;
    uint32_t edge = 0;
    uint64_t slot = 0;  // active slot number, 0 = none
    uint64_t perm = 0;  // permanent id, 0 = none
    std::unordered_map<uint32_t, std::unique_ptr<Node>> children;
  };

  const Node* find_node(std::span<const uint32_t> phrase) const;
  Node* grow_path(std::span<const uint32_t> phrase);
  void prune_up(Node* node);

  uint64_t max_len_;
  LruSlots slots_;
  Node root_;
  std::vector<Node*> node_of_slot_;  // indexed by slot
  std::vector<std::vector<uint32_t>> permanent_;
};

}  // namespace fslz
