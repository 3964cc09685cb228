#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mpst {

struct Role {
  std::string name;
  friend auto operator<=>(const Role&, const Role&) = default;
};

struct Label {
  std::string name;
  friend auto operator<=>(const Label&, const Label&) = default;
};

// Dense ids assigned in lexicographic order of the names.
template <class Name>
class IdTable {
 public:
  IdTable() = default;
  explicit IdTable(const std::set<Name>& names) : names_(names.begin(), names.end()) {
    for (std::uint32_t i = 0; i < names_.size(); ++i) ids_.emplace(names_[i], i);
  }
  std::optional<std::uint32_t> id(const Name& n) const {
    auto it = ids_.find(n);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<Name> name(std::uint32_t id) const {
    if (id >= names_.size()) return std::nullopt;
    return names_[id];
  }
  std::size_t size() const { return names_.size(); }
  const std::vector<Name>& names() const { return names_; }

 private:
  std::vector<Name> names_;
  std::map<Name, std::uint32_t> ids_;
};

using RoleTable = IdTable<Role>;
using LabelTable = IdTable<Label>;

}  // namespace mpst
