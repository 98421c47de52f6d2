#include "fslz/phrase_dict.hpp"

#include <algorithm>

namespace fslz {

LruSlots::LruSlots(uint64_t capacity)
    : capacity_(capacity),
      phrases_(capacity + 1),
      prev_(capacity + 1, 0),
      next_(capacity + 1, 0) {}

bool LruSlots::active(uint64_t slot) const {
  return slot >= 1 && slot <= capacity_ && !phrases_[slot].empty();
}

void LruSlots::check_active(uint64_t slot) const {
  if (!active(slot)) throw Error("inactive slot " + std::to_string(slot));
}

uint64_t LruSlots::lru_slot() const {
  if (active_ == 0) throw Error("lru_slot on empty dictionary");
  return tail_;
}

void LruSlots::push_front(uint64_t slot) {
  prev_[slot] = 0;
  next_[slot] = head_;
  if (head_ != 0) prev_[head_] = slot;
  head_ = slot;
  if (tail_ == 0) tail_ = slot;
}

void LruSlots::unlink(uint64_t slot) {
  if (prev_[slot] != 0) next_[prev_[slot]] = next_[slot];
  if (next_[slot] != 0) prev_[next_[slot]] = prev_[slot];
  if (head_ == slot) head_ = next_[slot];
  if (tail_ == slot) tail_ = prev_[slot];
  prev_[slot] = next_[slot] = 0;
}

uint64_t LruSlots::insert(std::vector<uint32_t> phrase) {
  if (phrase.empty()) throw Error("empty phrase insert");
  if (active_ == capacity_) throw Error("insert into full dictionary");
  uint64_t slot;
  if (released_ != 0) {
    slot = released_;
    released_ = 0;
  } else {
    slot = next_unused_++;
  }
  phrases_[slot] = std::move(phrase);
  push_front(slot);
  ++active_;
  return slot;
}

void LruSlots::release(uint64_t slot) {
  check_active(slot);
  if (released_ != 0) throw Error("unconsumed released slot");
  unlink(slot);
  phrases_[slot].clear();
  released_ = slot;
  --active_;
}

void LruSlots::touch(uint64_t slot) {
  check_active(slot);
  if (head_ == slot) return;
  unlink(slot);
  push_front(slot);
}

std::span<const uint32_t> LruSlots::phrase(uint64_t slot) const {
  check_active(slot);
  return phrases_[slot];
}

void LruSlots::set_phrase_back(uint64_t slot, uint32_t symbol) {
  check_active(slot);
  phrases_[slot].back() = symbol;
}

PhraseDictionary::PhraseDictionary(uint64_t capacity, uint64_t max_len)
    : max_len_(max_len), slots_(capacity), node_of_slot_(capacity + 1, nullptr) {
  if (max_len < 1) throw UsageError("max phrase length must be at least 1");
}

const PhraseDictionary::Node* PhraseDictionary::find_node(
    std::span<const uint32_t> phrase) const {
  const Node* node = &root_;
  for (uint32_t s : phrase) {
    auto it = node->children.find(s);
    if (it == node->children.end()) return nullptr;
    node = it->second.get();
  }
  return node;
}

PhraseDictionary::Node* PhraseDictionary::grow_path(
    std::span<const uint32_t> phrase) {
  Node* node = &root_;
  for (uint32_t s : phrase) {
    auto it = node->children.find(s);
    if (it == node->children.end()) {
      auto child = std::make_unique<Node>();
      child->parent = node;
      child->edge = s;
      it = node->children.emplace(s, std::move(child)).first;
    }
    node = it->second.get();
  }
  return node;
}

void PhraseDictionary::prune_up(Node* node) {
  while (node != &root_ && node->slot == 0 && node->perm == 0 &&
         node->children.empty()) {
    Node* parent = node->parent;
    parent->children.erase(node->edge);
    node = parent;
  }
}

uint64_t PhraseDictionary::insert_permanent(std::span<const uint32_t> phrase) {
  if (phrase.empty() || phrase.size() > max_len_) {
    throw UsageError("permanent entry length out of range");
  }
  Node* node = grow_path(phrase);
  if (node->perm != 0 || node->slot != 0) {
    throw Error("duplicate dictionary entry");
  }
  permanent_.emplace_back(phrase.begin(), phrase.end());
  node->perm = permanent_.size();
  return node->perm;
}

MatchRef PhraseDictionary::longest_active_match(
    std::span<const uint32_t> remaining) const {
  MatchRef best;
  const Node* node = &root_;
  uint64_t depth = 0;
  for (uint32_t s : remaining) {
    auto it = node->children.find(s);
    if (it == node->children.end()) break;
    node = it->second.get();
    ++depth;
    if (node->slot != 0) {
      best = {MatchRef::Kind::Slot, node->slot, depth};
    } else if (node->perm != 0) {
      best = {MatchRef::Kind::Permanent, node->perm, depth};
    }
  }
  return best;
}

uint64_t PhraseDictionary::insert_with_eviction(
    std::span<const uint32_t> phrase) {
  if (phrase.empty() || phrase.size() > max_len_) {
    throw UsageError("phrase length out of range");
  }
  if (slots_.capacity() == 0) return 0;
  if (slots_.full()) {
    uint64_t victim = slots_.lru_slot();
    Node* node = node_of_slot_[victim];
    node->slot = 0;
    node_of_slot_[victim] = nullptr;
    prune_up(node);
    slots_.release(victim);
  }
  Node* node = grow_path(phrase);
  if (node->slot != 0 || node->perm != 0) {
    throw Error("duplicate dictionary entry");
  }
  uint64_t slot = slots_.insert({phrase.begin(), phrase.end()});
  node->slot = slot;
  node_of_slot_[slot] = node;
  return slot;
}

bool PhraseDictionary::node_exists(std::span<const uint32_t> phrase) const {
  return find_node(phrase) != nullptr;
}

bool PhraseDictionary::entry_active(std::span<const uint32_t> phrase) const {
  const Node* node = find_node(phrase);
  return node != nullptr && (node->slot != 0 || node->perm != 0);
}

void PhraseDictionary::check_invariants() const {
  // Every non-root node must carry a mark or lead to one, and slot marks
  // must agree with the slot table.
  uint64_t marked = 0;
  // depth-first walk without recursion to keep stack use flat
  std::vector<const Node*> stack{&root_};
  while (!stack.empty()) {
    const Node* node = stack.back();
    stack.pop_back();
    if (node != &root_ && node->slot == 0 && node->perm == 0 &&
        node->children.empty()) {
      throw Error("unmarked leaf retained in trie");
    }
    if (node->slot != 0) {
      ++marked;
      if (!slots_.active(node->slot)) throw Error("stale slot mark in trie");
      if (node_of_slot_[node->slot] != node) throw Error("slot map mismatch");
    }
    for (const auto& [sym, child] : node->children) stack.push_back(child.get());
  }
  if (marked != slots_.active_count()) {
    throw Error("slot count mismatch between trie and slot table");
  }
}

}  // namespace fslz
