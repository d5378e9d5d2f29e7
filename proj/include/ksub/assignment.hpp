#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ksub {

// Ground set of n elements {0, ..., n-1} and k dimensions {1, ..., k}.
struct GroundSet {
  int n = 0;
  int k = 0;

  GroundSet(int n_, int k_) : n(n_), k(k_) {
    if (n < 1) throw std::invalid_argument("ground set needs n >= 1");
    if (k < 1) throw std::invalid_argument("ground set needs k >= 1");
  }

  bool operator==(const GroundSet&) const = default;
};

// A vector x in {0, 1, ..., k}^n. Label 0 means unselected; label i in [1, k]
// places the element in the i-th subset. The per-dimension subsets are
// disjoint by construction since each element carries a single label.
class Assignment {
 public:
  explicit Assignment(const GroundSet& gs)
      : labels_(static_cast<size_t>(gs.n), 0), k_(gs.k) {}

  Assignment(std::vector<uint8_t> labels, int k)
      : labels_(std::move(labels)), k_(k) {
    if (k_ < 1) throw std::invalid_argument("assignment needs k >= 1");
    if (labels_.empty()) throw std::invalid_argument("assignment needs n >= 1");
    for (uint8_t l : labels_) {
      if (l > k_) {
        throw std::invalid_argument("assignment label out of range [0, k]: " +
                                    std::to_string(int(l)));
      }
    }
  }

  int n() const { return static_cast<int>(labels_.size()); }
  int k() const { return k_; }

  int label(int e) const { return labels_[check_element(e)]; }

  void set(int e, int i) {
    check_element(e);
    if (i < 0 || i > k_) {
      throw std::invalid_argument("assignment label out of range [0, k]: " +
                                  std::to_string(i));
    }
    labels_[static_cast<size_t>(e)] = static_cast<uint8_t>(i);
  }

  // Copy with element e relabeled to i.
  Assignment with(int e, int i) const {
    Assignment out = *this;
    out.set(e, i);
    return out;
  }

  // |supp(x)|: number of selected elements.
  int support_size() const {
    int c = 0;
    for (uint8_t l : labels_) c += (l != 0);
    return c;
  }

  // |supp_i(x)| for dimension i in [1, k].
  int support_size(int i) const {
    int c = 0;
    for (uint8_t l : labels_) c += (l == i);
    return c;
  }

  // Selected elements in ascending id order.
  std::vector<int> support() const {
    std::vector<int> s;
    for (int e = 0; e < n(); ++e) {
      if (labels_[static_cast<size_t>(e)] != 0) s.push_back(e);
    }
    return s;
  }

  // x <= y in the partial order: X_i subseteq Y_i for every dimension.
  bool precedes(const Assignment& y) const {
    if (y.n() != n()) return false;
    for (int e = 0; e < n(); ++e) {
      uint8_t l = labels_[static_cast<size_t>(e)];
      if (l != 0 && y.labels_[static_cast<size_t>(e)] != l) return false;
    }
    return true;
  }

  const std::vector<uint8_t>& labels() const { return labels_; }

  bool operator==(const Assignment& other) const {
    return k_ == other.k_ && labels_ == other.labels_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int e = 0; e < n(); ++e) {
      if (e) s += ",";
      s += std::to_string(int(labels_[static_cast<size_t>(e)]));
    }
    return s + "]";
  }

 private:
  size_t check_element(int e) const {
    if (e < 0 || e >= n()) {
      throw std::invalid_argument("element out of range: " + std::to_string(e));
    }
    return static_cast<size_t>(e);
  }

  std::vector<uint8_t> labels_;
  int k_;
};

}  // namespace ksub
