#pragma once

#include "hft/types.hpp"

#include <random>
#include <vector>

namespace hft {

struct Transition {
  Vec state;
  int action = 0;
  double reward = 0.0;
  Vec next_state;  // empty when done
  bool done = false;
  Vec qstar_row;  // teacher row for the state; empty outside stage-I training
};

// Fixed-capacity FIFO ring with uniform sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const { return storage_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Transition& at(std::size_t logical) const;  // 0 = oldest

  std::vector<const Transition*> sample(std::size_t k, std::mt19937_64& rng) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // next slot to overwrite once full
  std::vector<Transition> storage_;
};

}  // namespace hft
