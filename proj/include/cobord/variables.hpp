#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cobord/rational.hpp"

namespace cobord {

using VarId = std::uint32_t;

/// Process-wide interning table for series variables. A variable is a name
/// plus a fixed positive complex degree (1 for Chern roots and geometric
/// generators, k for elementary-symmetric placeholders like c_k).
class VarTable {
 public:
  static VarTable& instance() {
    static VarTable t;
    return t;
  }

  VarId intern(const std::string& name, int degree = 1) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = index_.find(name);
    if (it != index_.end()) {
      if (vars_[it->second].second != degree)
        throw Error("variable '" + name + "' re-declared with different degree");
      return it->second;
    }
    VarId id = static_cast<VarId>(vars_.size());
    vars_.emplace_back(name, degree);
    index_.emplace(name, id);
    return id;
  }

  const std::string& name(VarId v) const {
    std::lock_guard<std::mutex> lk(mu_);
    return vars_.at(v).first;
  }

  /// Id of an already-declared variable, if any.
  std::optional<VarId> find(const std::string& name) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  int degree(VarId v) const {
    std::lock_guard<std::mutex> lk(mu_);
    return vars_.at(v).second;
  }

 private:
  VarTable() = default;
  mutable std::mutex mu_;
  std::vector<std::pair<std::string, int>> vars_;
  std::unordered_map<std::string, VarId> index_;
};

inline VarId var_id(const std::string& name, int degree = 1) {
  return VarTable::instance().intern(name, degree);
}
inline const std::string& var_name(VarId v) { return VarTable::instance().name(v); }
inline int var_degree(VarId v) { return VarTable::instance().degree(v); }

}  // namespace cobord
