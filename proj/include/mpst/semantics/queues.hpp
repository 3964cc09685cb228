#pragma once

#include <compare>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mpst/core/names.hpp"
#include "mpst/core/sort.hpp"

namespace mpst {

struct QueueEntry {
  Label label;
  Sort sort;
  friend bool operator==(const QueueEntry&, const QueueEntry&) = default;
  friend std::strong_ordering operator<=>(const QueueEntry& a, const QueueEntry& b) {
    if (auto c = a.label <=> b.label; c != 0) return c;
    return a.sort <=> b.sort;
  }
};

// FIFO per ordered pair (sender, receiver). Empty queues are never stored,
// so structural equality is equality of the environments.
class QueueEnv {
 public:
  using Key = std::pair<Role, Role>;
  using Map = std::map<Key, std::vector<QueueEntry>>;

  const std::vector<QueueEntry>& at(const Role& from, const Role& to) const;
  bool empty() const { return q_.empty(); }
  const Map& queues() const { return q_; }
  std::size_t total_size() const;

  void push_back(const Role& from, const Role& to, QueueEntry e);
  void push_front(const Role& from, const Role& to, QueueEntry e);
  std::optional<QueueEntry> pop_front(const Role& from, const Role& to);

  friend bool operator==(const QueueEnv&, const QueueEnv&) = default;
  friend auto operator<=>(const QueueEnv& a, const QueueEnv& b) { return a.q_ <=> b.q_; }

 private:
  Map q_;
};

QueueEnv enq(const QueueEnv& q, const Role& from, const Role& to, QueueEntry e);
// None when the queue is empty.
std::optional<std::pair<QueueEntry, QueueEnv>> deq(const QueueEnv& q, const Role& from, const Role& to);

}  // namespace mpst
