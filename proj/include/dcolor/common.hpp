#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcolor {

using Node = int32_t;
using NodeSet = std::vector<Node>;
constexpr int kNoColor = 0;  // colors are 1..Δ

// Error taxonomy. Each error carries a short machine-readable kind.
struct Error : std::runtime_error {
  std::string kind;
  Error(std::string k, const std::string& msg) : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};
struct IllegalSpec : Error { explicit IllegalSpec(const std::string& m) : Error("IllegalSpec", m) {} };
struct BudgetExceeded : Error {
  Node from, to;
  int bits;
  BudgetExceeded(Node f, Node t, int b, int budget)
      : Error("BudgetExceeded", "edge " + std::to_string(f) + "->" + std::to_string(t) + " carried " +
                                    std::to_string(b) + " bits > B=" + std::to_string(budget)),
        from(f), to(t), bits(b) {}
};
struct DecompositionFailed : Error { explicit DecompositionFailed(const std::string& m) : Error("DecompositionFailed", m) {} };
struct InvariantViolated : Error { explicit InvariantViolated(const std::string& m) : Error("InvariantViolated", m) {} };
struct LevelOrderViolated : Error { explicit LevelOrderViolated(const std::string& m) : Error("LevelOrderViolated", m) {} };
struct MatchingTooSmall : Error { explicit MatchingTooSmall(const std::string& m) : Error("MatchingTooSmall", m) {} };
struct NotD1LC : Error {
  Node node;
  NotD1LC(Node v, const std::string& m) : Error("NotD1LC", "node " + std::to_string(v) + ": " + m), node(v) {}
};
struct NotGraytone : Error {
  Node node;
  explicit NotGraytone(Node v) : Error("NotGraytone", "node " + std::to_string(v)), node(v) {}
};
struct RelayUnavailable : Error { explicit RelayUnavailable(const std::string& m) : Error("RelayUnavailable", m) {} };
struct DegreeBoundViolated : Error { explicit DegreeBoundViolated(const std::string& m) : Error("DegreeBoundViolated", m) {} };
struct IterationCapExceeded : Error {
  std::vector<int> violated;
  IterationCapExceeded(const std::string& m, std::vector<int> v) : Error("IterationCapExceeded", m), violated(std::move(v)) {}
};
struct SlackFailed : Error { explicit SlackFailed(const std::string& m) : Error("SlackFailed", m) {} };
struct NoCandidate : Error { explicit NoCandidate(const std::string& m) : Error("NoCandidate", m) {} };
struct PairFormationFailed : Error { explicit PairFormationFailed(const std::string& m) : Error("PairFormationFailed", m) {} };
struct AssertFailed : Error { explicit AssertFailed(const std::string& m) : Error("AssertFailed", m) {} };

#define DCOLOR_CHECK(cond, ErrT, msg) \
  do {                                \
    if (!(cond)) throw ErrT(msg);     \
  } while (0)

inline int ceil_log2(uint64_t x) {
  int b = 0;
  while ((uint64_t(1) << b) < x) ++b;
  return b;
}

// SplitMix64 finalizer, used for seed derivation.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
inline uint64_t hash_combine(uint64_t a, uint64_t b) { return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL)); }
inline uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  return hash_combine(hash_combine(hash_combine(seed, a), b), c);
}

// xoshiro256** with platform-independent bounded sampling.
class Rng {
 public:
  using result_type = uint64_t;
  explicit Rng(uint64_t seed = 0) { reseed(seed); }
  void reseed(uint64_t seed) {
    uint64_t x = seed;
    for (auto& w : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      w = mix64(x);
    }
  }
  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return std::numeric_limits<uint64_t>::max(); }
  uint64_t operator()() {
    const uint64_t r = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return r;
  }
  // uniform in [0, k)
  uint64_t below(uint64_t k) {
    if (k <= 1) return 0;
    const uint64_t lim = max() - max() % k;
    uint64_t r;
    do r = (*this)();
    while (r >= lim);
    return r % k;
  }
  double uniform01() { return double((*this)() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && uniform01() < p); }
  template <class V>
  void shuffle(V& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

}  // namespace dcolor
