#include "mpst/semantics/queues.hpp"

#include "mpst/semantics/action.hpp"

namespace mpst {

const std::vector<QueueEntry>& QueueEnv::at(const Role& from, const Role& to) const {
  static const std::vector<QueueEntry> kEmpty;
  auto it = q_.find({from, to});
  return it == q_.end() ? kEmpty : it->second;
}

std::size_t QueueEnv::total_size() const {
  std::size_t n = 0;
  for (const auto& [k, v] : q_) n += v.size();
  return n;
}

void QueueEnv::push_back(const Role& from, const Role& to, QueueEntry e) {
  q_[{from, to}].push_back(std::move(e));
}

void QueueEnv::push_front(const Role& from, const Role& to, QueueEntry e) {
  auto& v = q_[{from, to}];
  v.insert(v.begin(), std::move(e));
}

std::optional<QueueEntry> QueueEnv::pop_front(const Role& from, const Role& to) {
  auto it = q_.find({from, to});
  if (it == q_.end()) return std::nullopt;
  QueueEntry e = std::move(it->second.front());
  it->second.erase(it->second.begin());
  if (it->second.empty()) q_.erase(it);
  return e;
}

QueueEnv enq(const QueueEnv& q, const Role& from, const Role& to, QueueEntry e) {
  QueueEnv r = q;
  r.push_back(from, to, std::move(e));
  return r;
}

std::optional<std::pair<QueueEntry, QueueEnv>> deq(const QueueEnv& q, const Role& from, const Role& to) {
  QueueEnv r = q;
  auto e = r.pop_front(from, to);
  if (!e) return std::nullopt;
  return std::make_pair(std::move(*e), std::move(r));
}

std::string to_string(const Action& a) {
  std::string s = a.dir == Dir::Send ? "!" : "?";
  return s + a.subj.name + "," + a.other.name + "(" + a.label.name + "," + a.sort.to_string() + ")";
}

std::string to_string(const Trace& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += " ";
    s += to_string(t[i]);
  }
  return s + "]";
}

}  // namespace mpst
