#pragma once

// Independent reference implementations used to freeze expected values.
// Nothing here calls into the library's metric code.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Free-group words as strings: lowercase letters are generators, uppercase
// their inverses, "" the identity.
inline char inv(char c) {
  return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                     : static_cast<char>(std::tolower(c));
}

inline std::string reduce(const std::string& w) {
  std::string out;
  for (char c : w) {
    if (!out.empty() && out.back() == inv(c)) out.pop_back();
    else out.push_back(c);
  }
  return out;
}

inline std::string inverse(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (auto& c : out) c = inv(c);
  return out;
}

// d(u, v) = |u⁻¹v| after free reduction.
inline long free_distance(const std::string& u, const std::string& v) {
  return static_cast<long>(reduce(inverse(reduce(u)) + reduce(v)).size());
}

inline long free_norm(const std::string& u) { return free_distance("", u); }

// Doubled Gromov product (x·y)_base.
inline long free_product2(const std::string& x, const std::string& y, const std::string& base = "") {
  return free_distance(x, base) + free_distance(y, base) - free_distance(x, y);
}

// All reduced words of length ≤ r over the first `rank` letters.
inline std::vector<std::string> free_ball(int rank, int r) {
  std::vector<char> letters;
  for (int i = 0; i < rank; ++i) {
    const char c = static_cast<char>('a' + i + (i >= 4 ? 1 : 0));  // skip 'e'
    letters.push_back(c);
    letters.push_back(inv(c));
  }
  std::vector<std::string> out{""};
  std::vector<std::string> frontier{""};
  for (int k = 0; k < r; ++k) {
    std::vector<std::string> next;
    for (const auto& w : frontier)
      for (char c : letters)
        if (w.empty() || w.back() != inv(c)) next.push_back(w + c);
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// Exact distances of Z² with an arbitrary symmetric generating set, by BFS
// over a dense grid [-L, L]².
class Z2 {
 public:
  Z2(std::vector<std::pair<int, int>> gens, int extent) : L_(extent), gens_(std::move(gens)) {
    const int side = 2 * L_ + 1;
    dist_.assign(static_cast<std::size_t>(side) * side, -1);
    std::deque<std::pair<int, int>> q{{0, 0}};
    at(0, 0) = 0;
    while (!q.empty()) {
      auto [x, y] = q.front();
      q.pop_front();
      for (auto [dx, dy] : gens_) {
        const int nx = x + dx, ny = y + dy;
        if (std::abs(nx) > L_ || std::abs(ny) > L_ || at(nx, ny) >= 0) continue;
        at(nx, ny) = at(x, y) + 1;
        q.emplace_back(nx, ny);
      }
    }
  }

  static Z2 standard(int extent) { return Z2({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, extent); }

  long norm(int x, int y) const { return dist_[idx(x, y)]; }
  long distance(std::pair<int, int> p, std::pair<int, int> q) const {
    return norm(q.first - p.first, q.second - p.second);
  }
  long product2(std::pair<int, int> p, std::pair<int, int> q) const {
    return norm(p.first, p.second) + norm(q.first, q.second) - distance(p, q);
  }

 private:
  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(y + L_) * static_cast<std::size_t>(2 * L_ + 1) +
           static_cast<std::size_t>(x + L_);
  }
  long& at(int x, int y) { return dist_[idx(x, y)]; }

  int L_;
  std::vector<std::pair<int, int>> gens_;
  std::vector<long> dist_;
};

// Doubled δ by scanning every ordered triple of a distance matrix with base 0.
inline long brute_delta2(const std::vector<std::vector<long>>& d) {
  const std::size_t n = d.size();
  auto p2 = [&](std::size_t x, std::size_t y) { return d[x][0] + d[y][0] - d[x][y]; };
  long best = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) best = std::max(best, std::min(p2(x, z), p2(y, z)) - p2(x, y));
  return best;
}

}  // namespace oracle
