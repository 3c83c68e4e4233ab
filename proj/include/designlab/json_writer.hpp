#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace designlab {

// Streaming JSON writer. Floating-point values are emitted with 17
// significant digits so records round-trip exactly.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v);
  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(bool v);
  JsonWriter& raw(std::string_view fragment);

  const std::string& str() const { return out_; }

 private:
  void comma();
  std::string out_;
  std::vector<bool> need_comma_;
  bool pending_key_ = false;
};

std::string json_escape(std::string_view s);
std::string format_double17(double v);
std::uint64_t fnv1a64(std::string_view s);

}  // namespace designlab
