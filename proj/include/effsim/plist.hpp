#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

namespace effsim {

/// Persistent singly linked list with front push/pop. Copies share structure,
/// so threading one through a state handler costs O(1) per operation.
template <class T>
class PList {
 public:
  PList() = default;

  [[nodiscard]] bool empty() const noexcept { return head_ == nullptr; }
  [[nodiscard]] std::size_t size() const noexcept { return head_ ? head_->size : 0; }

  /// Precondition: !empty().
  [[nodiscard]] const T& front() const { return head_->value; }

  [[nodiscard]] PList push(T value) const {
    PList out;
    out.head_ = std::make_shared<const Cell>(Cell{std::move(value), head_, size() + 1});
    return out;
  }

  /// Precondition: !empty().
  [[nodiscard]] PList pop() const {
    PList out;
    out.head_ = head_->next;
    return out;
  }

  /// Elements front to back.
  [[nodiscard]] std::vector<T> to_vector() const {
    std::vector<T> out;
    out.reserve(size());
    for (const Cell* c = head_.get(); c != nullptr; c = c->next.get()) out.push_back(c->value);
    return out;
  }

  static PList from_vector(const std::vector<T>& xs) {
    PList out;
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) out = out.push(*it);
    return out;
  }

  friend bool operator==(const PList& a, const PList& b) {
    if (a.size() != b.size()) return false;
    const Cell* x = a.head_.get();
    const Cell* y = b.head_.get();
    for (; x != nullptr; x = x->next.get(), y = y->next.get()) {
      if (x == y) return true;
      if (!(x->value == y->value)) return false;
    }
    return true;
  }

 private:
  struct Cell {
    T value;
    std::shared_ptr<const Cell> next;
    std::size_t size;
  };
  std::shared_ptr<const Cell> head_;
};

/// Append-only result sequence (`xs ++ [x]`), stored reversed internally.
template <class T>
class SnocList {
 public:
  SnocList() = default;

  [[nodiscard]] bool empty() const noexcept { return rev_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return rev_.size(); }

  [[nodiscard]] SnocList append(T value) const {
    SnocList out;
    out.rev_ = rev_.push(std::move(value));
    return out;
  }

  /// Elements in insertion order.
  [[nodiscard]] std::vector<T> to_vector() const {
    std::vector<T> out = rev_.to_vector();
    return {out.rbegin(), out.rend()};
  }

  static SnocList from_vector(const std::vector<T>& xs) {
    SnocList out;
    for (const auto& x : xs) out = out.append(x);
    return out;
  }

  friend bool operator==(const SnocList& a, const SnocList& b) { return a.rev_ == b.rev_; }

 private:
  PList<T> rev_;
};

}  // namespace effsim
