#include "script_reader.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>

#include "netvis/errors.hpp"

namespace netvis::detail {

Location LocatedDocument::at(const std::string& pointer) const {
    auto it = locations.find(pointer);
    return it == locations.end() ? Location{} : it->second;
}

namespace {

std::string escape_pointer_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    LocatedDocument run() {
        LocatedDocument doc;
        skip_ws();
        if (peek_word("var")) {
            advance(3);
            if (!at_ws()) {
                fail("expected whitespace after 'var'");
            }
            skip_ws();
            if (!peek_word("options")) {
                fail("expected 'options' after 'var'");
            }
            advance(7);
            skip_ws();
            if (peek() != '=') {
                fail("expected '=' after 'var options'");
            }
            advance(1);
            skip_ws();
        }
        if (peek() != '{') {
            fail(eof() ? "expected an object, got end of input" : "options body must be a JSON object");
        }
        locations_ = &doc.locations;
        doc.value = read_value("");
        skip_ws();
        if (peek() == ';') {
            advance(1);
            skip_ws();
        }
        if (!eof()) {
            fail("unexpected trailing content");
        }
        return doc;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column_); }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return eof() ? '\0' : text_[pos_]; }
    bool at_ws() const {
        const char c = peek();
        return c == ' ' || c == '\t' || c == '\n' || c == '\r';
    }
    bool peek_word(std::string_view word) const { return text_.substr(pos_, word.size()) == word; }

    void advance(std::size_t count) {
        for (std::size_t k = 0; k < count && !eof(); ++k) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
            ++pos_;
        }
    }

    void skip_ws() {
        while (at_ws()) {
            advance(1);
        }
    }

    void expect(char c) {
        if (peek() != c) {
            if (eof()) {
                fail(std::string("expected '") + c + "', got end of input");
            }
            fail(std::string("expected '") + c + "', got '" + peek() + "'");
        }
        advance(1);
    }

    ordered_json read_value(const std::string& pointer) {
        skip_ws();
        (*locations_)[pointer] = Location{line_, column_};
        const char c = peek();
        if (c == '{') {
            return read_object(pointer);
        }
        if (c == '[') {
            return read_array(pointer);
        }
        if (c == '"') {
            return read_string();
        }
        if (c == '-' || (c >= '0' && c <= '9')) {
            return read_number();
        }
        if (peek_word("true")) {
            advance(4);
            return true;
        }
        if (peek_word("false")) {
            advance(5);
            return false;
        }
        if (peek_word("null")) {
            advance(4);
            return nullptr;
        }
        if (c == '\'') {
            fail("single-quoted strings are not JSON");
        }
        if (c == '}') {
            fail("unexpected '}'");
        }
        if (eof()) {
            fail("unexpected end of input (unbalanced braces?)");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    ordered_json read_object(const std::string& pointer) {
        expect('{');
        ordered_json obj = ordered_json::object();
        skip_ws();
        if (peek() == '}') {
            advance(1);
            return obj;
        }
        while (true) {
            skip_ws();
            if (peek() != '"') {
                if (eof()) {
                    fail("unexpected end of input inside object (unbalanced braces?)");
                }
                fail("object keys must be double-quoted strings");
            }
            const std::size_t key_line = line_;
            const std::size_t key_column = column_;
            std::string key = read_string();
            if (obj.contains(key)) {
                throw ParseError("duplicate key \"" + key + "\"", key_line, key_column);
            }
            skip_ws();
            expect(':');
            obj[key] = read_value(pointer + "/" + escape_pointer_token(key));
            skip_ws();
            if (peek() == ',') {
                advance(1);
                continue;
            }
            if (peek() == '}') {
                advance(1);
                return obj;
            }
            if (eof()) {
                fail("unexpected end of input inside object (unbalanced braces?)");
            }
            fail(std::string("expected ',' or '}', got '") + peek() + "'");
        }
    }

    ordered_json read_array(const std::string& pointer) {
        expect('[');
        ordered_json arr = ordered_json::array();
        skip_ws();
        if (peek() == ']') {
            advance(1);
            return arr;
        }
        while (true) {
            arr.push_back(read_value(pointer + "/" + std::to_string(arr.size())));
            skip_ws();
            if (peek() == ',') {
                advance(1);
                continue;
            }
            if (peek() == ']') {
                advance(1);
                return arr;
            }
            if (eof()) {
                fail("unexpected end of input inside array");
            }
            fail(std::string("expected ',' or ']', got '") + peek() + "'");
        }
    }

    static void append_utf8(std::string& out, std::uint32_t cp) {
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    std::uint32_t read_hex4() {
        std::uint32_t cp = 0;
        for (int k = 0; k < 4; ++k) {
            const char h = peek();
            std::uint32_t digit = 0;
            if (h >= '0' && h <= '9') {
                digit = static_cast<std::uint32_t>(h - '0');
            } else if (h >= 'a' && h <= 'f') {
                digit = static_cast<std::uint32_t>(h - 'a' + 10);
            } else if (h >= 'A' && h <= 'F') {
                digit = static_cast<std::uint32_t>(h - 'A' + 10);
            } else {
                fail("invalid \\u escape");
            }
            cp = cp * 16 + digit;
            advance(1);
        }
        return cp;
    }

    std::string read_string() {
        expect('"');
        std::string out;
        while (true) {
            if (eof()) {
                fail("unterminated string");
            }
            const char c = peek();
            if (c == '"') {
                advance(1);
                return out;
            }
            if (static_cast<unsigned char>(c) < 0x20) {
                fail("control character in string");
            }
            if (c != '\\') {
                out += c;
                advance(1);
                continue;
            }
            advance(1);
            const char e = peek();
            advance(1);
            switch (e) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case '/': out += '/'; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 't': out += '\t'; break;
                case 'u': {
                    std::uint32_t cp = read_hex4();
                    if (cp >= 0xD800 && cp <= 0xDBFF) {
                        if (!peek_word("\\u")) {
                            fail("unpaired surrogate");
                        }
                        advance(2);
                        const std::uint32_t low = read_hex4();
                        if (low < 0xDC00 || low > 0xDFFF) {
                            fail("unpaired surrogate");
                        }
                        cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
                    } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
                        fail("unpaired surrogate");
                    }
                    append_utf8(out, cp);
                    break;
                }
                default: fail("invalid escape sequence");
            }
        }
    }

    ordered_json read_number() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        auto digit_at = [&](std::size_t i) { return i < text_.size() && text_[i] >= '0' && text_[i] <= '9'; };
        bool integral = true;
        if (end < text_.size() && text_[end] == '-') {
            ++end;
        }
        if (!digit_at(end)) {
            fail("invalid number");
        }
        if (text_[end] == '0') {
            ++end;
            if (digit_at(end)) {
                fail("leading zeros are not allowed");
            }
        } else {
            while (digit_at(end)) {
                ++end;
            }
        }
        if (end < text_.size() && text_[end] == '.') {
            integral = false;
            ++end;
            if (!digit_at(end)) {
                fail("invalid number");
            }
            while (digit_at(end)) {
                ++end;
            }
        }
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            integral = false;
            ++end;
            if (end < text_.size() && (text_[end] == '+' || text_[end] == '-')) {
                ++end;
            }
            if (!digit_at(end)) {
                fail("invalid number");
            }
            while (digit_at(end)) {
                ++end;
            }
        }
        const char* first = text_.data() + start;
        const char* last = text_.data() + end;
        ordered_json result;
        if (integral) {
            std::int64_t value = 0;
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec == std::errc() && ptr == last) {
                result = value;
            } else {
                integral = false;
            }
        }
        if (!integral) {
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
                fail("number out of range");
            }
            result = value;
        }
        advance(end - start);
        return result;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    std::unordered_map<std::string, Location>* locations_ = nullptr;
};

}  // namespace

LocatedDocument read_options_script(std::string_view text) {
    return Reader(text).run();
}

}  // namespace netvis::detail
