#include "ascii_grid.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace habitat {

namespace {

/// Whitespace-delimited token scanner that tracks 1-based line/column.
class Tokenizer {
public:
    explicit Tokenizer(std::string_view text) : text_(text) {}

    struct Token {
        std::string_view text;
        std::size_t line;
        std::size_t column;
    };

    bool next(Token& out) {
        while (pos_ < text_.size() && is_space(text_[pos_])) advance();
        if (pos_ >= text_.size()) return false;
        out.line = line_;
        out.column = column_;
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !is_space(text_[pos_])) advance();
        out.text = text_.substr(start, pos_ - start);
        return true;
    }

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static bool is_space(char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

double parse_number(const Tokenizer::Token& tok, const char* what) {
    double value = 0.0;
    const char* begin = tok.text.data();
    const char* end = begin + tok.text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value))
        throw ParseError(std::string("non-numeric ") + what + " '" + std::string(tok.text) + "'",
                         tok.line, tok.column);
    return value;
}

long parse_integer(const Tokenizer::Token& tok, const char* what) {
    const double value = parse_number(tok, what);
    if (value != std::floor(value) || std::abs(value) > 2147483647.0)
        throw ParseError(std::string(what) + " must be an integer, got '" +
                             std::string(tok.text) + "'",
                         tok.line, tok.column);
    return static_cast<long>(value);
}

Tokenizer::Token expect_token(Tokenizer& tok, const char* what) {
    Tokenizer::Token t;
    if (!tok.next(t))
        throw ParseError(std::string("unexpected end of input, expected ") + what, tok.line(),
                         tok.column());
    return t;
}

}  // namespace

Grid parse_ascii_grid(std::string_view text, GridKind kind) {
    Tokenizer tok(text);

    constexpr const char* header_keys[6] = {"ncols",     "nrows",    "xllcorner",
                                            "yllcorner", "cellsize", "nodata_value"};
    double header_values[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 6; ++i) {
        const auto key = expect_token(tok, header_keys[i]);
        if (!iequals(key.text, header_keys[i]))
            throw ParseError("malformed header key '" + std::string(key.text) + "', expected '" +
                                 header_keys[i] + "'",
                             key.line, key.column);
        const auto value = expect_token(tok, header_keys[i]);
        header_values[i] = (i < 2) ? static_cast<double>(parse_integer(value, header_keys[i]))
                                   : parse_number(value, header_keys[i]);
    }

    GridSpec spec;
    spec.ncols = static_cast<int>(header_values[0]);
    spec.nrows = static_cast<int>(header_values[1]);
    spec.xllcorner = header_values[2];
    spec.yllcorner = header_values[3];
    spec.cellsize = header_values[4];
    const double nodata_value = header_values[5];
    try {
        spec.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), 1, 1);
    }

    Grid grid(spec, kind, nodata_value);
    const std::size_t expected = spec.cell_count();
    for (std::size_t i = 0; i < expected; ++i) {
        Tokenizer::Token t;
        if (!tok.next(t))
            throw ParseError("wrong cell count: expected " + std::to_string(expected) +
                                 " values, found " + std::to_string(i),
                             tok.line(), tok.column());
        const double v = parse_number(t, "cell value");
        const int row = static_cast<int>(i) / spec.ncols;
        const int col = static_cast<int>(i) % spec.ncols;
        if (v == nodata_value) {
            grid.set_nodata(row, col);
        } else {
            if (kind == GridKind::categorical && v != std::floor(v))
                throw ParseError("non-integer value '" + std::string(t.text) +
                                     "' in categorical grid",
                                 t.line, t.column);
            grid.set(row, col, v);
        }
    }
    Tokenizer::Token extra;
    if (tok.next(extra))
        throw ParseError("wrong cell count: expected " + std::to_string(expected) +
                             " values, found extra token '" + std::string(extra.text) + "'",
                         extra.line, extra.column);
    return grid;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string write_ascii_grid(const Grid& grid) {
    const GridSpec& spec = grid.spec();
    std::string out;
    out.reserve(spec.cell_count() * 8 + 128);
    out += "ncols " + std::to_string(spec.ncols) + "\n";
    out += "nrows " + std::to_string(spec.nrows) + "\n";
    out += "xllcorner " + format_double(spec.xllcorner) + "\n";
    out += "yllcorner " + format_double(spec.yllcorner) + "\n";
    out += "cellsize " + format_double(spec.cellsize) + "\n";
    out += "NODATA_value " + format_double(grid.nodata_value()) + "\n";
    for (int r = 0; r < spec.nrows; ++r) {
        for (int c = 0; c < spec.ncols; ++c) {
            if (c > 0) out += ' ';
            out += format_double(grid.at(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
    return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failure on '" + path.string() + "'");
}

Grid read_ascii_grid(const std::filesystem::path& path, GridKind kind) {
    try {
        return parse_ascii_grid(read_text_file(path), kind);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_ascii_grid_file(const Grid& grid, const std::filesystem::path& path) {
    write_text_file(path, write_ascii_grid(grid));
}

}  // namespace habitat
