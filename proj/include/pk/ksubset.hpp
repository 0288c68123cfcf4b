#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace pk {

// A k-subset of {1,...,n}, stored sorted ascending.
using Subset = std::vector<int>;

inline int mod1(int a, int n) {
  int r = a % n;
  if (r <= 0) r += n;
  return r;
}

// All k-subsets of {1..n} in lexicographic order.
inline std::vector<Subset> all_ksubsets(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("all_ksubsets: bad k");
  std::vector<Subset> out;
  Subset cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int t = i + 1; t < k; ++t) cur[t] = cur[t - 1] + 1;
  }
  if (k == 0) out.assign(1, Subset{});
  return out;
}

inline void check_subset(const Subset& J, int n) {
  for (size_t i = 0; i < J.size(); ++i) {
    if (J[i] < 1 || J[i] > n) throw std::invalid_argument("subset element out of range");
    if (i > 0 && J[i] <= J[i - 1]) throw std::invalid_argument("subset not sorted strictly");
  }
}

// Number of maximal runs of cyclically consecutive elements.
inline int cyclic_intervals(const Subset& J, int n) {
  if (J.empty()) return 0;
  if ((int)J.size() == n) return 1;
  int runs = 0;
  for (int a : J) {
    int succ = mod1(a + 1, n);
    if (!std::binary_search(J.begin(), J.end(), succ)) ++runs;
  }
  return runs;
}

// Frozen subsets are the n cyclic windows {i, i+1, ..., i+k-1} (mod n).
inline bool is_frozen(const Subset& J, int n) { return cyclic_intervals(J, n) == 1; }

inline Subset flip_subset(const Subset& J, int n) {
  Subset out;
  out.reserve(J.size());
  for (int a : J) out.push_back(n + 1 - a);
  std::sort(out.begin(), out.end());
  return out;
}

inline Subset window_subset(int start, int k, int n) {
  Subset out;
  out.reserve(k);
  for (int t = 0; t < k; ++t) out.push_back(mod1(start + t, n));
  std::sort(out.begin(), out.end());
  return out;
}

// k-1 consecutive labels followed by a one-step gap: {i, ..., i+k-2, i+k}.
inline Subset gap_window_subset(int start, int k, int n) {
  Subset out;
  out.reserve(k);
  for (int t = 0; t + 1 < k; ++t) out.push_back(mod1(start + t, n));
  out.push_back(mod1(start + k, n));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string subset_key(const Subset& J) {
  std::string s;
  for (size_t i = 0; i < J.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(J[i]);
  }
  return s;
}

inline Subset parse_subset_key(const std::string& key) {
  Subset out;
  size_t pos = 0;
  while (pos < key.size()) {
    size_t next = key.find(',', pos);
    if (next == std::string::npos) next = key.size();
    std::string tok = key.substr(pos, next - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad subset key: " + key);
    out.push_back(std::stoi(tok));
    pos = next + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty subset key");
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw std::invalid_argument("subset key not increasing: " + key);
  return out;
}

struct SubsetTable {
  int k = 0, n = 0;
  std::vector<Subset> subsets;  // lexicographic
  std::map<Subset, int> index;
  std::vector<char> frozen;
  std::vector<int> nonfrozen;  // positions into subsets, in lex order
};

inline const SubsetTable& subset_table(int k, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<SubsetTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{k, n}];
  if (!slot) {
    auto t = std::make_unique<SubsetTable>();
    t->k = k;
    t->n = n;
    t->subsets = all_ksubsets(n, k);
    for (int i = 0; i < (int)t->subsets.size(); ++i) {
      t->index[t->subsets[i]] = i;
      bool fr = is_frozen(t->subsets[i], n);
      t->frozen.push_back(fr ? 1 : 0);
      if (!fr) t->nonfrozen.push_back(i);
    }
    slot = std::move(t);
  }
  return *slot;
}

}  // namespace pk
