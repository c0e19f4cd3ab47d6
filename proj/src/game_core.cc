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


#include "leastcore/game_core.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace leastcore {
namespace {

void CheckPlayerCount(int num_players) {
  if (num_players < 0 || num_players > kMaxPlayers) {
    throw Error(ErrorCode::kTooManyPlayers,
                "player count " + std::to_string(num_players) +
                    " outside [0, " + std::to_string(kMaxPlayers) + "]");
  }
}

int WordCount(int num_players) { return (num_players + 63) / 64; }

uint64_t TailMask(int num_players) {
  const int rem = num_players & 63;
  return rem == 0 ? ~uint64_t{0} : (uint64_t{1} << rem) - 1;
}

}  // namespace

Coalition::Coalition(int num_players) : num_players_(num_players) {
  CheckPlayerCount(num_players);
  words_.assign(WordCount(num_players), 0);
}

Coalition Coalition::Grand(int num_players) {
  Coalition c(num_players);
  std::fill(c.words_.begin(), c.words_.end(), ~uint64_t{0});
  if (!c.words_.empty()) c.words_.back() &= TailMask(num_players);
  return c;
}

Coalition Coalition::FromMask(int num_players, uint64_t mask) {
  Coalition c(num_players);
  if (num_players < 64 && (mask >> num_players) != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask has bits beyond player count");
  }
  if (!c.words_.empty()) c.words_[0] = mask;
  return c;
}

Coalition Coalition::FromMembers(int num_players,
                                 std::span<const int> members) {
  Coalition c(num_players);
  for (int i : members) {
    if (i < 0 || i >= num_players) {
      throw Error(ErrorCode::kInvalidArgument,
                  "member " + std::to_string(i) + " out of range");
    }
    c.Insert(i);
  }
  return c;
}

int Coalition::size() const {
  int total = 0;
  for (uint64_t w : words_) total += std::popcount(w);
  return total;
}

bool Coalition::empty() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](uint64_t w) { return w == 0; });
}

void Coalition::Insert(int player) {
  words_[player >> 6] |= uint64_t{1} << (player & 63);
}

void Coalition::Erase(int player) {
  words_[player >> 6] &= ~(uint64_t{1} << (player & 63));
}

Coalition Coalition::Complement() const {
  Coalition c(num_players_);
  for (size_t w = 0; w < words_.size(); ++w) c.words_[w] = ~words_[w];
  if (!c.words_.empty()) c.words_.back() &= TailMask(num_players_);
  return c;
}

bool Coalition::IsSubsetOf(const Coalition& other) const {
  for (size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool Coalition::Intersects(const Coalition& other) const {
  for (size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

uint64_t Coalition::Mask() const {
  if (num_players_ > 64) {
    throw Error(ErrorCode::kInvalidArgument,
                "Mask() requires at most 64 players");
  }
  return words_.empty() ? 0 : words_[0];
}

std::vector<int> Coalition::Members() const {
  std::vector<int> out;
  out.reserve(size());
  ForEachMember([&](int i) { out.push_back(i); });
  return out;
}

double Coalition::Dot(std::span<const double> payoffs) const {
  if (static_cast<int>(payoffs.size()) != num_players_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "payoff vector length does not match player count");
  }
  double total = 0.0;
  ForEachMember([&](int i) { total += payoffs[i]; });
  return total;
}

Imputation::Imputation(std::vector<double> payoffs)
    : payoffs_(std::move(payoffs)) {
  double sum = 0.0;
  for (double x : payoffs_) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "imputation entries must be finite and nonnegative");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::kInvalidArgument,
                "imputation must sum to 1, got " + std::to_string(sum));
  }
}

Imputation Imputation::Uniform(int num_players) {
  if (num_players < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one player");
  }
  return Imputation(std::vector<double>(num_players, 1.0 / num_players));
}

CharacteristicOracle::CharacteristicOracle(int num_players)
    : num_players_(num_players) {
  CheckPlayerCount(num_players);
}

double CharacteristicOracle::Value(const Coalition& coalition) const {
  if (coalition.num_players() != num_players_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "coalition player count does not match game");
  }
  calls_.fetch_add(1, std::memory_order_relaxed);
  return Evaluate(coalition);
}

NormalizedGame::NormalizedGame(OraclePtr inner)
    : CharacteristicOracle(inner->num_players()), inner_(std::move(inner)) {
  raw_grand_value_ = inner_->Value(Coalition::Grand(num_players()));
  if (!(raw_grand_value_ > 0.0)) {
    throw Error(ErrorCode::kNonPositiveGrandValue,
                "v(I) = " + std::to_string(raw_grand_value_));
  }
  scale_ = 1.0 / raw_grand_value_;
}

double NormalizedGame::Evaluate(const Coalition& coalition) const {
  if (coalition.size() == num_players()) return 1.0;
  return inner_->Value(coalition) / raw_grand_value_;
}

std::shared_ptr<const NormalizedGame> Normalize(OraclePtr game) {
  return std::make_shared<const NormalizedGame>(std::move(game));
}

double Deficit(std::span<const double> payoffs, const Coalition& coalition,
               double epsilon, double value) {
  return std::max(0.0, value - epsilon - coalition.Dot(payoffs));
}

double Deficit(std::span<const double> payoffs, const Coalition& coalition,
               double epsilon, const CharacteristicOracle& game) {
  return Deficit(payoffs, coalition, epsilon, game.Value(coalition));
}

double CoalitionLoss(std::span<const double> payoffs,
                     const Coalition& coalition, double epsilon,
                     double value) {
  const int size = coalition.size();
  if (size == 0) {
    throw Error(ErrorCode::kEmptyCoalition, "loss of the empty coalition");
  }
  const double d = Deficit(payoffs, coalition, epsilon, value);
  return d * d / (2.0 * size);
}

double CoalitionLoss(std::span<const double> payoffs,
                     const Coalition& coalition, double epsilon,
                     const CharacteristicOracle& game) {
  if (coalition.empty()) {
    throw Error(ErrorCode::kEmptyCoalition, "loss of the empty coalition");
  }
  return CoalitionLoss(payoffs, coalition, epsilon, game.Value(coalition));
}

SampleEstimate EpsilonHat(std::span<const double> payoffs,
                          std::span<const Coalition> sample,
                          const CharacteristicOracle& game) {
  if (sample.empty()) {
    throw Error(ErrorCode::kEmptySample, "epsilon-hat needs a sample");
  }
  SampleEstimate est;
  est.sample_size = static_cast<int>(sample.size());
  size_t best = 0;
  for (size_t k = 0; k < sample.size(); ++k) {
    const double excess = game.Value(sample[k]) - sample[k].Dot(payoffs);
    if (k == 0 || excess > est.epsilon_hat) {
      est.epsilon_hat = excess;
      best = k;
    }
  }
  est.argmax = sample[best];
  return est;
}

CoalitionRange EnumerateCoalitions(int num_players) {
  if (num_players > kMaxEnumerablePlayers) {
    throw Error(ErrorCode::kTooManyPlayers,
                "cannot enumerate coalitions of " +
                    std::to_string(num_players) + " players");
  }
  if (num_players < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative player count");
  }
  return CoalitionRange(num_players);
}

Coalition SampleCoalition(int num_players, Rng& rng) {
  if (num_players < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one player");
  }
  Coalition c(num_players);
  const int words = WordCount(num_players);
  const uint64_t tail = TailMask(num_players);
  std::vector<uint64_t> draw(words);
  bool nonempty = false;
  while (!nonempty) {
    nonempty = false;
    for (int w = 0; w < words; ++w) {
      draw[w] = rng();
      if (w == words - 1) draw[w] &= tail;
      nonempty = nonempty || draw[w] != 0;
    }
  }
  for (int w = 0; w < words; ++w) {
    uint64_t bits = draw[w];
    while (bits != 0) {
      c.Insert(w * 64 + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  return c;
}

std::vector<Coalition> SampleCoalitions(int num_players, int batch_size,
                                        Rng& rng) {
  if (batch_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "batch size must be >= 1");
  }
  std::vector<Coalition> out;
  out.reserve(batch_size);
  for (int b = 0; b < batch_size; ++b) {
    out.push_back(SampleCoalition(num_players, rng));
  }
  return out;
}

uint64_t DeriveSeed(uint64_t seed, uint64_t stream) {
  // splitmix64 finalizer over the combined key.
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace leastcore
