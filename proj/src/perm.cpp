#include "galcount/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace galcount {

Perm Perm::identity(int degree) {
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 1);
  return Perm(std::move(img));
}

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  const int n = degree();
  if (n <= 0) throw input_error("permutation degree must be positive");
  std::vector<char> seen(n + 1, 0);
  for (int v : images_) {
    if (v < 1 || v > n || seen[v]) throw input_error("image list is not a bijection of {1..n}");
    seen[v] = 1;
  }
}

Perm Perm::operator*(const Perm& rhs) const {
  if (degree() != rhs.degree()) throw input_error("degree mismatch in permutation product");
  std::vector<int> img(images_.size());
  for (size_t i = 0; i < images_.size(); ++i) img[i] = rhs.images_[images_[i] - 1];
  Perm p;
  p.images_ = std::move(img);
  return p;
}

Perm Perm::inverse() const {
  std::vector<int> img(images_.size());
  for (size_t i = 0; i < images_.size(); ++i) img[images_[i] - 1] = static_cast<int>(i) + 1;
  Perm p;
  p.images_ = std::move(img);
  return p;
}

bool Perm::is_identity() const {
  for (size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i) + 1) return false;
  return true;
}

int Perm::order() const {
  int ord = 1;
  std::vector<char> done(images_.size(), 0);
  for (size_t i = 0; i < images_.size(); ++i) {
    if (done[i]) continue;
    int len = 0;
    size_t j = i;
    while (!done[j]) {
      done[j] = 1;
      ++len;
      j = images_[j] - 1;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

int Perm::fixed_points() const {
  int f = 0;
  for (size_t i = 0; i < images_.size(); ++i)
    if (images_[i] == static_cast<int>(i) + 1) ++f;
  return f;
}

int Perm::cycle_count() const {
  int c = 0;
  std::vector<char> done(images_.size(), 0);
  for (size_t i = 0; i < images_.size(); ++i) {
    if (done[i]) continue;
    ++c;
    size_t j = i;
    while (!done[j]) {
      done[j] = 1;
      j = images_[j] - 1;
    }
  }
  return c;
}

std::vector<std::vector<int>> Perm::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> done(images_.size(), 0);
  for (size_t i = 0; i < images_.size(); ++i) {
    if (done[i] || images_[i] == static_cast<int>(i) + 1) {
      done[i] = 1;
      continue;
    }
    std::vector<int> cyc;
    size_t j = i;
    while (!done[j]) {
      done[j] = 1;
      cyc.push_back(static_cast<int>(j) + 1);
      j = images_[j] - 1;
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string Perm::to_cycle_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cs) {
    os << '(';
    for (size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << ')';
  }
  return os.str();
}

Perm parse_perm(const std::string& line, int degree) {
  if (line.find('(') != std::string::npos) {
    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 1);
    size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      if (pos >= line.size()) break;
      if (line[pos] != '(') throw input_error("expected '(' in cycle notation: " + line);
      size_t close = line.find(')', pos);
      if (close == std::string::npos) throw input_error("unclosed cycle in: " + line);
      std::istringstream is(line.substr(pos + 1, close - pos - 1));
      std::vector<int> cyc;
      std::string tok;
      while (is >> tok) {
        // commas tolerated as separators
        for (char& ch : tok)
          if (ch == ',') ch = ' ';
        std::istringstream is2(tok);
        int v;
        while (is2 >> v) cyc.push_back(v);
      }
      for (int v : cyc)
        if (v < 1 || v > degree) throw input_error("cycle point out of range in: " + line);
      for (size_t i = 0; i < cyc.size(); ++i) img[cyc[i] - 1] = cyc[(i + 1) % cyc.size()];
      pos = close + 1;
    }
    return Perm(std::move(img));
  }
  std::istringstream is(line);
  std::vector<int> img;
  int v;
  while (is >> v) img.push_back(v);
  if (static_cast<int>(img.size()) != degree)
    throw input_error("image list has wrong length (expected " + std::to_string(degree) + ")");
  return Perm(std::move(img));
}

} // namespace galcount
