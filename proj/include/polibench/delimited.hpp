#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace polibench {

/// RFC 4180 style reader: fields may be quoted, quoted fields may contain the
/// delimiter, doubled quotes and line breaks. Both LF and CRLF end a record.
class DelimitedReader {
public:
    DelimitedReader(std::istream& in, char delimiter);

    /// Next record, or nullopt at end of input. Throws ParseError on an
    /// unterminated quoted field or stray characters after a closing quote.
    std::optional<std::vector<std::string>> next();

    /// Line on which the most recently returned record started (1-based).
    std::size_t record_line() const noexcept { return record_line_; }

private:
    std::istream& in_;
    char delimiter_;
    std::size_t line_ = 1;
    std::size_t record_line_ = 0;
};

}  // namespace polibench
