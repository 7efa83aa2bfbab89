#include "gtz/core.hpp"

#include <sstream>

namespace gtz {

Levels::Levels(std::initializer_list<std::int64_t> values) {
  if (values.size() == 0 || values.size() > kMaxArity)
    throw UsageError("level vector must have 1 or 2 components");
  arity_ = static_cast<int>(values.size());
  std::size_t j = 0;
  for (auto v : values) v_[j++] = v;
}

Levels Levels::uniform(int arity, std::int64_t value) {
  if (arity < 1 || arity > kMaxArity) throw UsageError("arity must be 1 or 2");
  Levels l;
  l.arity_ = arity;
  for (int j = 0; j < arity; ++j) l.v_[static_cast<std::size_t>(j)] = value;
  return l;
}

std::int64_t Levels::product() const noexcept {
  std::int64_t p = 1;
  for (int j = 0; j < arity_; ++j) p *= v_[static_cast<std::size_t>(j)];
  return p;
}

bool Levels::all_equal(std::int64_t value) const noexcept {
  for (int j = 0; j < arity_; ++j)
    if (v_[static_cast<std::size_t>(j)] != value) return false;
  return true;
}

std::string Levels::to_string(char sep) const {
  std::ostringstream os;
  for (int j = 0; j < arity_; ++j) {
    if (j) os << sep;
    os << v_[static_cast<std::size_t>(j)];
  }
  return os.str();
}

Levels Levels::parse(const std::string& text) {
  Levels l;
  std::string token;
  auto flush = [&] {
    if (token.empty()) throw UsageError("malformed level vector '" + text + "'");
    if (l.arity_ >= kMaxArity) throw UsageError("level vector '" + text + "' has more than 2 components");
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw UsageError("malformed level vector '" + text + "'");
    l.v_[static_cast<std::size_t>(l.arity_++)] = v;
    token.clear();
  };
  for (char c : text) {
    if (c == 'x' || c == ',') {
      flush();
    } else if (c != ' ' && c != '(' && c != ')') {
      token.push_back(c);
    }
  }
  flush();
  return l;
}

} // namespace gtz
