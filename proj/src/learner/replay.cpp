#include "hft/learner/replay.hpp"

namespace hft {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("replay buffer capacity must be positive");
}

void ReplayBuffer::push(Transition t) {
  if (storage_.size() < capacity_) {
    storage_.push_back(std::move(t));
  } else {
    storage_[head_] = std::move(t);
    head_ = (head_ + 1) % capacity_;
  }
}

const Transition& ReplayBuffer::at(std::size_t logical) const {
  return storage_[(head_ + logical) % storage_.size()];
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t k, std::mt19937_64& rng) const {
  if (storage_.empty()) throw ConfigError("sampling from an empty replay buffer");
  std::uniform_int_distribution<std::size_t> pick(0, storage_.size() - 1);
  std::vector<const Transition*> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(&storage_[pick(rng)]);
  return out;
}

}  // namespace hft
