#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace protodsl {

enum class ErrorKind {
  Io,
  Parse,
  Invalid,
  State,
  NotFound,
  Internal,
};

// Library-wide exception. The C API maps `kind` onto status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

// ---- small string helpers -------------------------------------------------

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split_ws(std::string_view s);
std::vector<std::string> split_on(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

// Collapses every run of whitespace to a single space and trims the ends.
std::string normalize_ws(std::string_view s);

// Whitespace token count of `s`.
std::size_t count_tokens(std::string_view s);

// ---- file helpers ----------------------------------------------------------

std::string read_file(const std::string& path);
// Write-then-rename so concurrent readers never observe a partial file.
void write_file_atomic(const std::string& path, std::string_view contents);
bool file_exists(const std::string& path);
std::vector<std::string> read_lines(const std::string& path);

// ---- deterministic RNG ------------------------------------------------------

// Uniform double in [0,1) from the top 53 bits of a 64-bit draw. Used instead
// of std::uniform_real_distribution, whose output is not pinned by the
// standard; results must be bit-identical across platforms.
template <typename Rng>
double next_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace protodsl
