#include <algorithm>

#include "mpst/semantics/lts.hpp"

namespace mpst {

std::string to_string(SemanticsError::Kind k) {
  switch (k) {
    case SemanticsError::Kind::NotEnabled: return "NotEnabled";
    case SemanticsError::Kind::FuelExhausted: return "FuelExhausted";
    case SemanticsError::Kind::Ambiguous: return "Ambiguous";
    case SemanticsError::Kind::Projection: return "Projection";
  }
  return "?";
}

namespace {

struct FuelExhausted {};

bool step_less(const GlobalStep& a, const GlobalStep& b) {
  if (auto c = a.action <=> b.action; c != 0) return c < 0;
  return a.next < b.next;
}

void normalize(std::vector<GlobalStep>& steps) {
  std::sort(steps.begin(), steps.end(), step_less);
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
}

class Stepper {
 public:
  explicit Stepper(std::size_t fuel) : fuel_(fuel) {}

  std::vector<GlobalStep> enabled(const GlobalConfig& c) {
    if (c.is_type()) return enabled_type(c.type());
    if (c.kind() == GlobalConfig::Kind::MsgSent) return enabled_sent(c);
    return enabled_msg(c.from(), c.to(), c.branches());
  }

 private:
  // Marker-free subterms on the current chain of str1 descents. A config
  // that reaches itself through str1 only yields steps that every branch
  // already has to provide, so the revisit contributes nothing.
  std::vector<GlobalType> path_;
  std::size_t fuel_;

  std::vector<GlobalStep> enabled_type(GlobalType g) {
    if (!unfold_head(g, fuel_)) throw FuelExhausted{};
    if (g.kind() != GlobalType::Kind::Msg) return {};
    for (const auto& seen : path_)
      if (seen == g) return {};
    GlobalConfig::Branches bs;
    bs.reserve(g.branches().size());
    for (const auto& b : g.branches()) bs.push_back({b.label, b.sort, GlobalConfig::of(b.cont)});
    path_.push_back(g);
    auto out = enabled_msg(g.from(), g.to(), bs);
    path_.pop_back();
    return out;
  }

  std::vector<GlobalStep> enabled_msg(const Role& p, const Role& q, const GlobalConfig::Branches& bs) {
    std::vector<GlobalStep> out;
    // g-step-send
    for (std::size_t j = 0; j < bs.size(); ++j) {
      out.push_back({Action{Dir::Send, p, q, bs[j].label, bs[j].sort}, GlobalConfig::msg_sent(p, q, j, bs)});
    }
    // g-step-str1: every branch must make the same step.
    if (!bs.empty()) {
      std::vector<std::vector<GlobalStep>> sub;
      sub.reserve(bs.size());
      for (const auto& b : bs) {
        sub.push_back(enabled(b.cont));
        normalize(sub.back());
        if (sub.back().empty()) break;
      }
      if (sub.size() == bs.size()) {
        std::vector<Action> acts;
        for (const auto& s : sub[0])
          if (s.action.subj != p && s.action.subj != q && (acts.empty() || acts.back() != s.action))
            acts.push_back(s.action);
        for (const auto& a : acts) {
          std::vector<std::vector<const GlobalConfig*>> choices(bs.size());
          bool all = true;
          for (std::size_t i = 0; i < bs.size() && all; ++i) {
            for (const auto& s : sub[i])
              if (s.action == a) choices[i].push_back(&s.next);
            all = !choices[i].empty();
          }
          if (!all) continue;
          std::vector<std::size_t> idx(bs.size(), 0);
          while (true) {
            GlobalConfig::Branches nb = bs;
            for (std::size_t i = 0; i < bs.size(); ++i) nb[i].cont = *choices[i][idx[i]];
            out.push_back({a, GlobalConfig::msg(p, q, std::move(nb))});
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
            if (k == idx.size()) break;
          }
        }
      }
    }
    return out;
  }

  std::vector<GlobalStep> enabled_sent(const GlobalConfig& c) {
    std::vector<GlobalStep> out;
    const auto& bs = c.branches();
    const auto& chosen = bs.at(c.chosen());
    // g-step-recv
    out.push_back({Action{Dir::Recv, c.to(), c.from(), chosen.label, chosen.sort}, chosen.cont});
    // g-step-str2: the chosen continuation steps, unless the receiver acts.
    for (auto& s : enabled(chosen.cont)) {
      if (s.action.subj == c.to()) continue;
      auto nb = bs;
      nb[c.chosen()].cont = std::move(s.next);
      out.push_back({s.action, GlobalConfig::msg_sent(c.from(), c.to(), c.chosen(), std::move(nb))});
    }
    return out;
  }
};

// Successor through the rule at the head of c, if that rule matches a.
std::optional<GlobalConfig> head_step(const GlobalConfig& c, const Action& a, std::size_t fuel) {
  if (c.kind() == GlobalConfig::Kind::MsgSent) {
    const auto& b = c.branches().at(c.chosen());
    if (a == Action{Dir::Recv, c.to(), c.from(), b.label, b.sort}) return b.cont;
    return std::nullopt;
  }
  Role p, q;
  GlobalConfig::Branches bs;
  if (c.is_type()) {
    GlobalType g = c.type();
    if (!unfold_head(g, fuel) || g.kind() != GlobalType::Kind::Msg) return std::nullopt;
    p = g.from();
    q = g.to();
    for (const auto& b : g.branches()) bs.push_back({b.label, b.sort, GlobalConfig::of(b.cont)});
  } else {
    p = c.from();
    q = c.to();
    bs = c.branches();
  }
  if (a.dir != Dir::Send || a.subj != p || a.other != q) return std::nullopt;
  for (std::size_t j = 0; j < bs.size(); ++j)
    if (bs[j].label == a.label && bs[j].sort == a.sort) return GlobalConfig::msg_sent(p, q, j, bs);
  return std::nullopt;
}

}  // namespace

Expected<std::vector<GlobalStep>, SemanticsError> global_enabled(const GlobalConfig& c, std::size_t fuel) {
  try {
    Stepper s(fuel);
    auto out = s.enabled(c);
    normalize(out);
    return out;
  } catch (const FuelExhausted&) {
    return unexpected(SemanticsError{SemanticsError::Kind::FuelExhausted, "unfolding fuel exhausted"});
  }
}

Expected<GlobalConfig, SemanticsError> global_step(const GlobalConfig& c, const Action& a, StepOptions opts) {
  if (auto h = head_step(c, a, opts.fuel)) return *h;
  auto steps = global_enabled(c, opts.fuel);
  if (!steps) return unexpected(steps.error());
  std::vector<const GlobalConfig*> matches;
  for (const auto& s : *steps)
    if (s.action == a) matches.push_back(&s.next);
  if (matches.empty())
    return unexpected(SemanticsError{SemanticsError::Kind::NotEnabled, to_string(a) + " is not enabled"});
  if (matches.size() > 1 && opts.strict)
    return unexpected(SemanticsError{SemanticsError::Kind::Ambiguous, to_string(a) + " has several successors"});
  return *matches.front();
}

}  // namespace mpst
