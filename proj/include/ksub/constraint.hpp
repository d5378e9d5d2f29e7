#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ksub/assignment.hpp"

namespace ksub {

// Feasibility predicate over assignments. Three variants:
//   total_size:      |supp(x)| <= B
//   individual_size: |supp_i(x)| <= B_i for every dimension i
//   group_size:      sum_{j in G_g} |supp_j(x)| <= cap_g for every group g,
//                    where G_1, ..., G_m partition {1, ..., k}
class Constraint {
 public:
  enum class Kind { total_size, individual_size, group_size };

  static Constraint total_size(int budget) {
    if (budget < 1) throw std::invalid_argument("total-size budget must be >= 1");
    Constraint c;
    c.kind_ = Kind::total_size;
    c.caps_ = {budget};
    return c;
  }

  static Constraint individual_size(std::vector<int> caps) {
    if (caps.empty()) throw std::invalid_argument("individual caps must be nonempty");
    for (int b : caps) {
      if (b < 1) throw std::invalid_argument("individual cap must be >= 1");
    }
    Constraint c;
    c.kind_ = Kind::individual_size;
    c.caps_ = std::move(caps);
    return c;
  }

  static Constraint group_size(std::vector<std::vector<int>> groups,
                               std::vector<int> caps) {
    if (groups.empty() || groups.size() != caps.size()) {
      throw std::invalid_argument("group constraint needs one cap per group");
    }
    for (int b : caps) {
      if (b < 1) throw std::invalid_argument("group cap must be >= 1");
    }
    Constraint c;
    c.kind_ = Kind::group_size;
    c.groups_ = std::move(groups);
    c.caps_ = std::move(caps);
    return c;
  }

  Kind kind() const { return kind_; }

  // Total-size budget B.
  int budget() const { return caps_[0]; }

  // Per-dimension caps (individual) or per-group caps (group).
  const std::vector<int>& caps() const { return caps_; }

  const std::vector<std::vector<int>>& groups() const { return groups_; }

  // B, sum of B_i, or sum of group caps: the number of greedy iterations.
  int total_budget() const {
    return std::accumulate(caps_.begin(), caps_.end(), 0);
  }

  // Group index (0-based) owning dimension i in [1, k]. Group constraints only.
  int group_of(int dim) const {
    for (size_t g = 0; g < groups_.size(); ++g) {
      for (int d : groups_[g]) {
        if (d == dim) return static_cast<int>(g);
      }
    }
    throw std::invalid_argument("dimension not covered by any group: " +
                                std::to_string(dim));
  }

  // Checks the constraint against a concrete ground set. Throws on caps that
  // the greedy cannot saturate or on a group structure that fails to
  // partition [k].
  void validate(const GroundSet& gs) const {
    switch (kind_) {
      case Kind::total_size:
        if (budget() > gs.n) {
          throw std::invalid_argument("total-size budget exceeds ground set: B=" +
                                      std::to_string(budget()) +
                                      ", n=" + std::to_string(gs.n));
        }
        break;
      case Kind::individual_size:
        if (static_cast<int>(caps_.size()) != gs.k) {
          throw std::invalid_argument("individual caps must have one entry per dimension");
        }
        if (total_budget() > gs.n) {
          throw std::invalid_argument("sum of individual caps exceeds ground set");
        }
        break;
      case Kind::group_size: {
        std::vector<int> seen(static_cast<size_t>(gs.k), 0);
        for (const auto& g : groups_) {
          if (g.empty()) throw std::invalid_argument("empty group");
          for (int d : g) {
            if (d < 1 || d > gs.k) {
              throw std::invalid_argument("group dimension out of range: " +
                                          std::to_string(d));
            }
            if (seen[static_cast<size_t>(d - 1)]++) {
              throw std::invalid_argument("dimension in more than one group: " +
                                          std::to_string(d));
            }
          }
        }
        for (int d = 1; d <= gs.k; ++d) {
          if (!seen[static_cast<size_t>(d - 1)]) {
            throw std::invalid_argument("dimension missing from groups: " +
                                        std::to_string(d));
          }
        }
        if (total_budget() > gs.n) {
          throw std::invalid_argument("sum of group caps exceeds ground set");
        }
        break;
      }
    }
  }

  bool feasible(const Assignment& x) const {
    switch (kind_) {
      case Kind::total_size:
        return x.support_size() <= budget();
      case Kind::individual_size: {
        for (size_t i = 0; i < caps_.size(); ++i) {
          if (x.support_size(static_cast<int>(i) + 1) > caps_[i]) return false;
        }
        return true;
      }
      case Kind::group_size: {
        for (size_t g = 0; g < groups_.size(); ++g) {
          int used = 0;
          for (int d : groups_[g]) used += x.support_size(d);
          if (used > caps_[g]) return false;
        }
        return true;
      }
    }
    return false;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::total_size:
        return "TS(B=" + std::to_string(budget()) + ")";
      case Kind::individual_size: {
        std::string s = "IS(";
        for (size_t i = 0; i < caps_.size(); ++i) {
          if (i) s += ",";
          s += std::to_string(caps_[i]);
        }
        return s + ")";
      }
      case Kind::group_size: {
        std::string s = "Group(";
        for (size_t g = 0; g < groups_.size(); ++g) {
          if (g) s += ";";
          for (size_t j = 0; j < groups_[g].size(); ++j) {
            if (j) s += ",";
            s += std::to_string(groups_[g][j]);
          }
          s += ":" + std::to_string(caps_[g]);
        }
        return s + ")";
      }
    }
    return "?";
  }

 private:
  Constraint() = default;

  Kind kind_ = Kind::total_size;
  std::vector<int> caps_;
  std::vector<std::vector<int>> groups_;
};

inline bool is_feasible(const Constraint& c, const Assignment& x) {
  return c.feasible(x);
}

}  // namespace ksub
