#pragma once

#include <stdexcept>
#include <utility>
#include <variant>

namespace mpst {

template <class E>
struct Unexpected {
  E error;
};

template <class E>
Unexpected<std::decay_t<E>> unexpected(E&& e) {
  return {std::forward<E>(e)};
}

class BadExpectedAccess : public std::logic_error {
 public:
  BadExpectedAccess() : std::logic_error("value() called on an error result") {}
};

// Value-or-error result used at every fallible API boundary.
template <class T, class E>
class Expected {
 public:
  Expected(const T& v) : data_(std::in_place_index<0>, v) {}
  Expected(T&& v) : data_(std::in_place_index<0>, std::move(v)) {}
  template <class G>
  Expected(Unexpected<G> u) : data_(std::in_place_index<1>, E(std::move(u.error))) {}

  bool has_value() const { return data_.index() == 0; }
  explicit operator bool() const { return has_value(); }

  T& value() & {
    if (!has_value()) throw BadExpectedAccess();
    return std::get<0>(data_);
  }
  const T& value() const& {
    if (!has_value()) throw BadExpectedAccess();
    return std::get<0>(data_);
  }
  T&& value() && {
    if (!has_value()) throw BadExpectedAccess();
    return std::move(std::get<0>(data_));
  }
  const E& error() const { return std::get<1>(data_); }
  E& error() { return std::get<1>(data_); }

  T& operator*() & { return value(); }
  const T& operator*() const& { return value(); }
  T* operator->() { return &value(); }
  const T* operator->() const { return &value(); }

 private:
  std::variant<T, E> data_;
};

struct Ok {
  friend bool operator==(Ok, Ok) { return true; }
};

template <class E>
using Status = Expected<Ok, E>;

}  // namespace mpst
