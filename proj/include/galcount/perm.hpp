#ifndef GALCOUNT_PERM_HPP
#define GALCOUNT_PERM_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "galcount/errors.hpp"

namespace galcount {

/// A permutation of {1..degree}, stored as the image array of each point.
/// Points are 1-based everywhere in the public interface.
class Perm {
public:
  Perm() = default;
  static Perm identity(int degree);

  /// images[i-1] is the image of point i; must be a bijection of {1..degree}.
  explicit Perm(std::vector<int> images);

  int degree() const { return static_cast<int>(images_.size()); }
  int apply(int point) const { return images_[point - 1]; }
  int operator[](int point) const { return apply(point); }

  /// (a * b)(x) = b(a(x)): a acts first.
  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;
  Perm conjugate_by(const Perm& g) const { return g.inverse() * (*this) * g; }

  bool is_identity() const;
  int order() const;
  int fixed_points() const;
  int cycle_count() const;  // includes fixed points as 1-cycles
  std::vector<std::vector<int>> cycles() const;  // nontrivial cycles only

  bool operator==(const Perm& rhs) const { return images_ == rhs.images_; }
  bool operator<(const Perm& rhs) const { return images_ < rhs.images_; }

  const std::vector<int>& images() const { return images_; }
  std::string to_cycle_string() const;

private:
  std::vector<int> images_;
};

struct PermHash {
  size_t operator()(const Perm& p) const {
    size_t h = 1469598103934665603ull;
    for (int v : p.images()) {
      h ^= static_cast<size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// Parses one generator line: either an n-entry image list ("2 3 1") or
/// disjoint cycles ("(1 2 3)(4 5)"). Throws input_error on malformed input.
Perm parse_perm(const std::string& line, int degree);

} // namespace galcount

#endif
