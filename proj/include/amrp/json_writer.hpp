#pragma once

#include <cassert>
#include <string>
#include <vector>

#include "amrp/num_format.hpp"

namespace amrp {

// Minimal streaming JSON emitter with fixed key order (insertion order) and
// fixed float formatting (9 significant digits), so pipeline outputs are
// byte-stable across runs.
class JsonWriter {
 public:
  JsonWriter() { out_.reserve(256); }

  JsonWriter& begin_object() {
    prefix();
    out_ += '{';
    stack_.push_back(State::object_first);
    return *this;
  }
  JsonWriter& end_object() {
    stack_.pop_back();
    out_ += '}';
    return *this;
  }
  JsonWriter& begin_array() {
    prefix();
    out_ += '[';
    stack_.push_back(State::array_first);
    return *this;
  }
  JsonWriter& end_array() {
    stack_.pop_back();
    out_ += ']';
    return *this;
  }

  JsonWriter& key(const std::string& k) {
    prefix();
    write_string(k);
    out_ += ':';
    pending_value_ = true;
    return *this;
  }

  JsonWriter& value(double v) {
    prefix();
    out_ += format_sig9(v);
    return *this;
  }
  // shortest round-trip form, for payloads that must reload bit-exactly
  JsonWriter& value_exact(double v) {
    prefix();
    out_ += format_exact(v);
    return *this;
  }
  JsonWriter& value(long long v) {
    prefix();
    out_ += std::to_string(v);
    return *this;
  }
  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(long v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(std::size_t v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(bool v) {
    prefix();
    out_ += v ? "true" : "false";
    return *this;
  }
  JsonWriter& value(const std::string& v) {
    prefix();
    write_string(v);
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string(v)); }

  template <typename T>
  JsonWriter& kv(const std::string& k, const T& v) {
    key(k);
    return value(v);
  }

  const std::string& str() const { return out_; }

 private:
  enum class State { object_first, object_rest, array_first, array_rest };

  void prefix() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (stack_.empty()) return;
    State& s = stack_.back();
    if (s == State::object_rest || s == State::array_rest) out_ += ',';
    if (s == State::object_first) s = State::object_rest;
    if (s == State::array_first) s = State::array_rest;
  }

  void write_string(const std::string& s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<State> stack_;
  bool pending_value_ = false;
};

}  // namespace amrp
