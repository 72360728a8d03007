#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace netpca {

// Minimal JSON emitter. Doubles are printed with 17 significant digits so
// every serialized value parses back to the identical bit pattern.
class JsonWriter {
 public:
  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(std::string_view k) {
    comma();
    append_string(k);
    out_ += ':';
    pending_value_ = true;
  }

  void value(double v) {
    comma();
    if (!std::isfinite(v)) {
      out_ += "null";
      return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out_ += buf;
  }

  void value(std::string_view v) {
    comma();
    append_string(v);
  }

  void value(const char* v) { value(std::string_view(v)); }

  void value(bool v) {
    comma();
    out_ += v ? "true" : "false";
  }

  void value(std::uint64_t v) {
    comma();
    out_ += std::to_string(v);
  }

  void value(std::int64_t v) {
    comma();
    out_ += std::to_string(v);
  }

  void value(int v) { value(static_cast<std::int64_t>(v)); }

  const std::string& str() const { return out_; }

 private:
  void open(char c) {
    comma();
    out_ += c;
    first_.push_back(true);
  }

  void close(char c) {
    out_ += c;
    first_.pop_back();
  }

  void comma() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!first_.empty()) {
      if (!first_.back()) out_ += ',';
      first_.back() = false;
    }
  }

  void append_string(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> first_;
  bool pending_value_ = false;
};

}  // namespace netpca
