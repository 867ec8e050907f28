#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sharpineq {

// Ordered JSON value. Doubles print with 17 significant digits; +-inf print as
// the strings "inf"/"-inf" and NaN as null.
class JValue {
 public:
  using Array = std::vector<JValue>;
  using Object = std::vector<std::pair<std::string, JValue>>;

  JValue() : v_(nullptr) {}
  JValue(std::nullptr_t) : v_(nullptr) {}
  JValue(bool b) : v_(b) {}
  JValue(int i) : v_(static_cast<std::int64_t>(i)) {}
  JValue(long i) : v_(static_cast<std::int64_t>(i)) {}
  JValue(long long i) : v_(static_cast<std::int64_t>(i)) {}
  JValue(unsigned long i) : v_(static_cast<std::int64_t>(i)) {}
  JValue(unsigned long long i) : v_(static_cast<std::int64_t>(i)) {}
  JValue(double d) : v_(d) {}
  JValue(const char* s) : v_(std::string(s)) {}
  JValue(std::string s) : v_(std::move(s)) {}
  JValue(Array a) : v_(std::move(a)) {}

  static JValue object() {
    JValue j;
    j.v_ = Object{};
    return j;
  }
  static JValue array() { return JValue(Array{}); }
  template <class T>
  static JValue array_of(const std::vector<T>& xs) {
    Array a;
    for (const auto& x : xs) a.emplace_back(x);
    return JValue(std::move(a));
  }

  // Appends (or replaces) a member; keeps insertion order.
  JValue& set(const std::string& key, JValue value);
  JValue& push(JValue value);
  const JValue* find(const std::string& key) const;

  std::string dump(int indent = 2) const;

 private:
  void write(std::string& out, int indent, int depth) const;
  std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object> v_;
};

std::string format_double(double x);
std::string json_escape(const std::string& s);

}  // namespace sharpineq
