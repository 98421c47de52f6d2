#include <doctest.h>

#include <algorithm>
#include <list>
#include <random>

#include "fslz/phrase_dict.hpp"
#include "helpers.hpp"

using namespace fslz;

namespace {

std::vector<uint32_t> sym(std::initializer_list<uint32_t> v) { return std::vector<uint32_t>(v); }

}  // namespace

TEST_CASE("lru slots numbering and recency") {
  LruSlots slots(3);
  CHECK(slots.insert({0}) == 1);
  CHECK(slots.insert({1}) == 2);
  CHECK(slots.insert({0, 1}) == 3);
  CHECK(slots.full());
  CHECK(slots.lru_slot() == 1);

  slots.touch(1);
  CHECK(slots.lru_slot() == 2);

  auto phrase_of = [](const LruSlots& s, uint64_t slot) {
    auto span = s.phrase(slot);
    return std::vector<uint32_t>(span.begin(), span.end());
  };
  slots.release(2);
  CHECK_FALSE(slots.active(2));
  CHECK(slots.insert({1, 1}) == 2);  // released slot reused first
  CHECK(phrase_of(slots, 2) == sym({1, 1}));

  slots.set_phrase_back(2, 0);
  CHECK(phrase_of(slots, 2) == sym({1, 0}));

  CHECK_THROWS_AS(slots.touch(9), Error);
  CHECK_THROWS_AS(LruSlots(2).lru_slot(), Error);
}

TEST_CASE("longest match on empty dictionary") {
  PhraseDictionary dict(4, 8);
  MatchRef m = dict.longest_active_match(sym({0, 1, 2}));
  CHECK(m.kind == MatchRef::Kind::None);
  CHECK(m.length == 0);
}

TEST_CASE("longest match picks deepest active entry") {
  PhraseDictionary dict(4, 8);
  uint64_t a = dict.insert_with_eviction(sym({0}));
  uint64_t ab = dict.insert_with_eviction(sym({0, 1}));
  CHECK(a == 1);
  CHECK(ab == 2);
  MatchRef m = dict.longest_active_match(sym({0, 1, 1}));
  CHECK(m.kind == MatchRef::Kind::Slot);
  CHECK(m.id == ab);
  CHECK(m.length == 2);
}

TEST_CASE("matching survives a broken prefix chain") {
  // insert "a" then "ab" with capacity 1: "a" is evicted but stays as an
  // unmarked trie node under the active "ab"
  PhraseDictionary dict(1, 8);
  dict.insert_with_eviction(sym({0}));
  uint64_t ab = dict.insert_with_eviction(sym({0, 1}));
  CHECK(dict.node_exists(sym({0})));
  CHECK_FALSE(dict.entry_active(sym({0})));
  CHECK(dict.entry_active(sym({0, 1})));

  MatchRef hit = dict.longest_active_match(sym({0, 1}));
  CHECK(hit.id == ab);
  CHECK(hit.length == 2);
  MatchRef miss = dict.longest_active_match(sym({0, 2}));
  CHECK(miss.kind == MatchRef::Kind::None);
  CHECK(miss.length == 0);
  dict.check_invariants();
}

TEST_CASE("insert fills lowest slot then evicts least recent") {
  PhraseDictionary dict(2, 4);
  CHECK(dict.insert_with_eviction(sym({0})) == 1);
  CHECK(dict.insert_with_eviction(sym({1})) == 2);
  CHECK(dict.insert_with_eviction(sym({2})) == 1);  // "a" was least recent
  CHECK_FALSE(dict.entry_active(sym({0})));
  CHECK(dict.entry_active(sym({1})));
  CHECK(dict.entry_active(sym({2})));
  dict.check_invariants();
}

TEST_CASE("eviction prunes childless unmarked nodes") {
  PhraseDictionary dict(1, 4);
  dict.insert_with_eviction(sym({0}));
  dict.insert_with_eviction(sym({1}));
  CHECK_FALSE(dict.node_exists(sym({0})));  // no active descendant left
  CHECK(dict.entry_active(sym({1})));
  dict.check_invariants();
}

TEST_CASE("insert validations") {
  PhraseDictionary dict(2, 2);
  CHECK_THROWS_AS(dict.insert_with_eviction(sym({0, 1, 0})), Error);
  dict.insert_with_eviction(sym({0}));
  CHECK_THROWS_AS(dict.insert_with_eviction(sym({0})), Error);  // duplicate active entry
}

TEST_CASE("capacity zero stores nothing") {
  PhraseDictionary dict(0, 4);
  CHECK(dict.insert_with_eviction(sym({0})) == 0);
  CHECK(dict.longest_active_match(sym({0})).kind == MatchRef::Kind::None);
  dict.check_invariants();
}

TEST_CASE("permanent entries never evict") {
  PhraseDictionary dict(1, 4);
  CHECK(dict.insert_permanent(sym({0})) == 1);
  CHECK(dict.insert_permanent(sym({1})) == 2);
  dict.insert_with_eviction(sym({0, 1}));
  dict.insert_with_eviction(sym({1, 1}));  // evicts the only evictable slot
  CHECK(dict.entry_active(sym({0})));
  CHECK(dict.entry_active(sym({1})));
  MatchRef m = dict.longest_active_match(sym({0, 0}));
  CHECK(m.kind == MatchRef::Kind::Permanent);
  CHECK(m.id == 1);
  CHECK(m.length == 1);
  MatchRef deeper = dict.longest_active_match(sym({1, 1, 0}));
  CHECK(deeper.kind == MatchRef::Kind::Slot);
  CHECK(deeper.length == 2);
  dict.check_invariants();
}

namespace {

// Plain-list model of the same dictionary: phrases with recency counters,
// longest match by scanning everything. Slot numbers are not modeled; the
// comparison is on matched values and the active set.
struct ModelDict {
  uint64_t capacity = 0;
  uint64_t clock = 0;
  std::list<std::pair<std::vector<uint32_t>, uint64_t>> entries;  // phrase, last use

  bool active(const std::vector<uint32_t>& p) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const auto& e) { return e.first == p; });
  }

  std::pair<std::vector<uint32_t>, uint64_t> longest_match(
      const std::vector<uint32_t>& remaining) const {
    std::vector<uint32_t> best;
    for (const auto& [phrase, when] : entries) {
      if (phrase.size() <= best.size() || phrase.size() > remaining.size()) continue;
      if (std::equal(phrase.begin(), phrase.end(), remaining.begin())) best = phrase;
    }
    return {best, best.size()};
  }

  void touch(const std::vector<uint32_t>& p) {
    for (auto& e : entries)
      if (e.first == p) e.second = ++clock;
  }

  void insert(const std::vector<uint32_t>& p) {
    if (entries.size() == capacity) {
      auto victim = std::min_element(entries.begin(), entries.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
      entries.erase(victim);
    }
    entries.push_back({p, ++clock});
  }
};

}  // namespace

TEST_CASE("random operations match a plain-list model") {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 20; ++round) {
    uint64_t capacity = 1 + rng() % 6;
    uint64_t max_len = 1 + rng() % 4;
    PhraseDictionary dict(capacity, max_len);
    ModelDict model;
    model.capacity = capacity;
    for (int step = 0; step < 300; ++step) {
      uint64_t len = 1 + rng() % max_len;
      std::vector<uint32_t> phrase(len);
      for (auto& s : phrase) s = rng() % 3;

      std::vector<uint32_t> probe(4);
      for (auto& s : probe) s = rng() % 3;
      MatchRef got = dict.longest_active_match(probe);
      auto [want_phrase, want_len] = model.longest_match(probe);
      REQUIRE(got.length == want_len);
      if (got.length > 0) {
        REQUIRE(std::vector<uint32_t>(dict.slot_phrase(got.id).begin(),
                                      dict.slot_phrase(got.id).end()) == want_phrase);
      }

      if (!model.active(phrase)) {
        dict.insert_with_eviction(phrase);
        model.insert(phrase);
      } else {
        MatchRef full = dict.longest_active_match(phrase);
        if (full.length == phrase.size()) {
          dict.touch(full.id);
          model.touch(phrase);
        }
      }
      REQUIRE(dict.active_count() == model.entries.size());
      REQUIRE(dict.active_count() <= capacity);
      if (step % 25 == 0) dict.check_invariants();
    }
    dict.check_invariants();
  }
}
