#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recal/types.hpp"

namespace recal {

/// Ordered set of configured disciplines. Registry order is the output order
/// of every per-discipline table.
class DisciplineRegistry {
 public:
  struct Entry {
    DisciplineId id;
    std::string display_name;
  };

  DisciplineRegistry() = default;

  explicit DisciplineRegistry(std::vector<Entry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw ValidationError("discipline registry is empty");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].id.empty()) throw ValidationError("discipline registry has an empty key");
      for (std::size_t j = 0; j < i; ++j)
        if (entries_[j].id == entries_[i].id)
          throw ValidationError("duplicate discipline key '" + entries_[i].id.key() + "'");
    }
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::optional<std::size_t> index_of(const DisciplineId& id) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].id == id) return i;
    return std::nullopt;
  }

  bool contains(const DisciplineId& id) const { return index_of(id).has_value(); }

  std::vector<DisciplineId> ids() const {
    std::vector<DisciplineId> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.id);
    return out;
  }

 private:
  std::vector<Entry> entries_;
};

}  // namespace recal
