#include "json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sharpineq {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (unsigned char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += static_cast<char>(ch);
        }
    }
  }
  return out + "\"";
}

JValue& JValue::set(const std::string& key, JValue value) {
  auto* obj = std::get_if<Object>(&v_);
  if (!obj) throw std::logic_error("JValue::set on a non-object");
  for (auto& kv : *obj)
    if (kv.first == key) {
      kv.second = std::move(value);
      return kv.second;
    }
  obj->emplace_back(key, std::move(value));
  return obj->back().second;
}

JValue& JValue::push(JValue value) {
  auto* arr = std::get_if<Array>(&v_);
  if (!arr) throw std::logic_error("JValue::push on a non-array");
  arr->push_back(std::move(value));
  return arr->back();
}

const JValue* JValue::find(const std::string& key) const {
  if (const auto* obj = std::get_if<Object>(&v_))
    for (const auto& kv : *obj)
      if (kv.first == key) return &kv.second;
  return nullptr;
}

std::string JValue::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += '\n';
  return out;
}

void JValue::write(std::string& out, int indent, int depth) const {
  auto newline = [&](int d) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  if (std::holds_alternative<std::nullptr_t>(v_)) {
    out += "null";
  } else if (const bool* b = std::get_if<bool>(&v_)) {
    out += *b ? "true" : "false";
  } else if (const auto* i = std::get_if<std::int64_t>(&v_)) {
    out += std::to_string(*i);
  } else if (const double* d = std::get_if<double>(&v_)) {
    if (std::isnan(*d))
      out += "null";
    else if (std::isinf(*d))
      out += *d > 0 ? "\"inf\"" : "\"-inf\"";
    else
      out += format_double(*d);
  } else if (const auto* s = std::get_if<std::string>(&v_)) {
    out += json_escape(*s);
  } else if (const auto* a = std::get_if<Array>(&v_)) {
    if (a->empty()) {
      out += "[]";
      return;
    }
    bool scalar = true;
    for (const auto& x : *a)
      scalar = scalar && !std::holds_alternative<Array>(x.v_) && !std::holds_alternative<Object>(x.v_);
    out += '[';
    for (std::size_t k = 0; k < a->size(); ++k) {
      if (k) out += scalar ? ", " : ",";
      if (!scalar) newline(depth + 1);
      (*a)[k].write(out, indent, depth + 1);
    }
    if (!scalar) newline(depth);
    out += ']';
  } else {
    const auto& o = std::get<Object>(v_);
    if (o.empty()) {
      out += "{}";
      return;
    }
    out += '{';
    for (std::size_t k = 0; k < o.size(); ++k) {
      if (k) out += ',';
      newline(depth + 1);
      out += json_escape(o[k].first);
      out += indent > 0 ? ": " : ":";
      o[k].second.write(out, indent, depth + 1);
    }
    newline(depth);
    out += '}';
  }
}

}  // namespace sharpineq
