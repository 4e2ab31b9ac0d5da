#include "polibench/delimited.hpp"

#include "polibench/errors.hpp"

namespace polibench {

DelimitedReader::DelimitedReader(std::istream& in, char delimiter)
    : in_(in), delimiter_(delimiter) {}

std::optional<std::vector<std::string>> DelimitedReader::next() {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool after_quote = false;  // just closed a quoted field
    bool any = false;
    record_line_ = line_;

    for (int ch = in_.get(); ch != std::char_traits<char>::eof(); ch = in_.get()) {
        any = true;
        const char c = static_cast<char>(ch);
        if (in_quotes) {
            if (c == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                    after_quote = true;
                }
            } else {
                if (c == '\n') ++line_;
                field.push_back(c);
            }
            continue;
        }
        if (c == delimiter_) {
            fields.push_back(std::move(field));
            field.clear();
            after_quote = false;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && in_.peek() == '\n') in_.get();
            ++line_;
            fields.push_back(std::move(field));
            return fields;
        } else if (after_quote) {
            throw Error(ErrorKind::ParseError,
                        "line " + std::to_string(line_) + ": unexpected character after closing quote");
        } else if (c == '"' && field.empty()) {
            in_quotes = true;
        } else {
            field.push_back(c);
        }
    }
    if (in_quotes) {
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(record_line_) + ": unterminated quoted field");
    }
    if (!any) {
        return std::nullopt;
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace polibench
