// Copyright 2026 The Leastcore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Coalitions, imputations, characteristic-function oracles and the
// per-coalition deficit/loss primitives shared by every solver.

#ifndef LEASTCORE_GAME_CORE_H_
#define LEASTCORE_GAME_CORE_H_

#include <atomic>
#include <bit>
#include <cstdint>
#include <iterator>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "leastcore/error.h"

namespace leastcore {

using Rng = std::mt19937_64;

inline constexpr int kMaxPlayers = 4096;
inline constexpr int kMaxEnumerablePlayers = 20;

// A subset of the players {0, ..., n-1}, stored as packed 64-bit words.
class Coalition {
 public:
  Coalition() = default;
  explicit Coalition(int num_players);

  static Coalition Grand(int num_players);
  static Coalition FromMask(int num_players, uint64_t mask);
  static Coalition FromMembers(int num_players, std::span<const int> members);

  int num_players() const { return num_players_; }
  int size() const;
  bool empty() const;
  bool Contains(int player) const {
    return (words_[player >> 6] >> (player & 63)) & 1u;
  }
  void Insert(int player);
  void Erase(int player);

  Coalition Complement() const;
  bool IsSubsetOf(const Coalition& other) const;
  bool Intersects(const Coalition& other) const;

  // Low 64 players as a bitmask; requires num_players() <= 64.
  uint64_t Mask() const;
  std::vector<int> Members() const;
  std::span<const uint64_t> words() const { return words_; }

  template <typename Fn>
  void ForEachMember(Fn&& fn) const {
    for (size_t w = 0; w < words_.size(); ++w) {
      uint64_t bits = words_[w];
      while (bits != 0) {
        fn(static_cast<int>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  // p^T c over the member indices.
  double Dot(std::span<const double> payoffs) const;

  friend bool operator==(const Coalition& a, const Coalition& b) = default;

 private:
  int num_players_ = 0;
  std::vector<uint64_t> words_;
};

// Nonnegative payoff vector summing to one.
class Imputation {
 public:
  static constexpr double kSumTolerance = 1e-9;

  // Throws kInvalidArgument when the vector is off the simplex.
  explicit Imputation(std::vector<double> payoffs);
  static Imputation Uniform(int num_players);

  int size() const { return static_cast<int>(payoffs_.size()); }
  double operator[](int i) const { return payoffs_[i]; }
  std::span<const double> values() const { return payoffs_; }
  const std::vector<double>& vector() const { return payoffs_; }
  operator std::span<const double>() const { return payoffs_; }

 private:
  std::vector<double> payoffs_;
};

// A transferable-utility game v: 2^I -> R with v(empty) = 0. Every call to
// Value() is counted; evaluation is const and safe to call concurrently.
class CharacteristicOracle {
 public:
  explicit CharacteristicOracle(int num_players);
  virtual ~CharacteristicOracle() = default;

  CharacteristicOracle(const CharacteristicOracle&) = delete;
  CharacteristicOracle& operator=(const CharacteristicOracle&) = delete;

  int num_players() const { return num_players_; }

  double Value(const Coalition& coalition) const;

  uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }
  void ResetCalls() const { calls_.store(0, std::memory_order_relaxed); }

 protected:
  // Implementations must return exactly 0 for the empty coalition.
  virtual double Evaluate(const Coalition& coalition) const = 0;

 private:
  int num_players_;
  mutable std::atomic<uint64_t> calls_{0};
};

using OraclePtr = std::shared_ptr<const CharacteristicOracle>;

// v scaled by 1 / v(I) so that the grand coalition is worth exactly 1.
class NormalizedGame : public CharacteristicOracle {
 public:
  explicit NormalizedGame(OraclePtr inner);

  const CharacteristicOracle& inner() const { return *inner_; }
  double raw_grand_value() const { return raw_grand_value_; }
  double scale() const { return scale_; }

 protected:
  double Evaluate(const Coalition& coalition) const override;

 private:
  OraclePtr inner_;
  double raw_grand_value_;
  double scale_;
};

// Throws kNonPositiveGrandValue when v(I) <= 0.
std::shared_ptr<const NormalizedGame> Normalize(OraclePtr game);

// d_c = max(0, v(C) - eps - p^T c).
double Deficit(std::span<const double> payoffs, const Coalition& coalition,
               double epsilon, double value);
double Deficit(std::span<const double> payoffs, const Coalition& coalition,
               double epsilon, const CharacteristicOracle& game);

// l_c = d_c^2 / (2|C|). Throws kEmptyCoalition.
double CoalitionLoss(std::span<const double> payoffs,
                     const Coalition& coalition, double epsilon,
                     double value);
double CoalitionLoss(std::span<const double> payoffs,
                     const Coalition& coalition, double epsilon,
                     const CharacteristicOracle& game);

struct SampleEstimate {
  double epsilon_hat = 0.0;
  int sample_size = 0;
  Coalition argmax;
};

// Maximum excess v(C) - p^T c over the sample; first occurrence wins ties.
SampleEstimate EpsilonHat(std::span<const double> payoffs,
                          std::span<const Coalition> sample,
                          const CharacteristicOracle& game);

// All 2^n - 1 nonempty coalitions in increasing bitmask order.
class CoalitionRange {
 public:
  class Iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Coalition;
    using difference_type = std::ptrdiff_t;

    Iterator(int num_players, uint64_t mask)
        : num_players_(num_players), mask_(mask) {}
    Coalition operator*() const {
      return Coalition::FromMask(num_players_, mask_);
    }
    Iterator& operator++() {
      ++mask_;
      return *this;
    }
    bool operator==(const Iterator& other) const {
      return mask_ == other.mask_;
    }
    uint64_t mask() const { return mask_; }

   private:
    int num_players_;
    uint64_t mask_;
  };

  explicit CoalitionRange(int num_players) : num_players_(num_players) {}
  Iterator begin() const { return Iterator(num_players_, 1); }
  Iterator end() const {
    return Iterator(num_players_, uint64_t{1} << num_players_);
  }
  uint64_t size() const { return (uint64_t{1} << num_players_) - 1; }

 private:
  int num_players_;
};

// Throws kTooManyPlayers above kMaxEnumerablePlayers.
CoalitionRange EnumerateCoalitions(int num_players);

// B coalitions, each player included independently with probability 1/2;
// empty draws are redrawn.
std::vector<Coalition> SampleCoalitions(int num_players, int batch_size,
                                        Rng& rng);
Coalition SampleCoalition(int num_players, Rng& rng);

// Derives an independent stream seed from a base seed and a stream tag.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

}  // namespace leastcore

#endif  // LEASTCORE_GAME_CORE_H_
