#include "tenrank/tensor_io.hpp"

#include "tenrank/errors.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace tenrank {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const auto b = s.find_first_not_of(" \t\r", i);
        if (b == std::string_view::npos) break;
        auto e = s.find_first_of(" \t\r", b);
        if (e == std::string_view::npos) e = s.size();
        out.push_back(s.substr(b, e - b));
        i = e;
    }
    return out;
}

std::size_t parse_count(std::string_view tok, std::size_t line, const char* what) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw FormatError("invalid " + std::string(what) + " '" + std::string(tok) + "'", line);
    return v;
}

double parse_scalar(std::string_view tok, std::size_t line) {
    double v = 0.0;
    const char* first = tok.data();
    if (!tok.empty() && tok.front() == '+') ++first;
    const auto [p, ec] = std::from_chars(first, tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw FormatError("non-numeric token '" + std::string(tok) + "'", line);
    return v;
}

/// Yields content lines, skipping blanks and collecting `# key value` comments.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& text) {
        while (std::getline(in_, buf_)) {
            ++number_;
            const std::string_view t = trim(buf_);
            if (t.empty()) continue;
            if (t.front() == '#') {
                record_comment(trim(t.substr(1)));
                continue;
            }
            text.assign(t);
            return true;
        }
        return false;
    }

    std::size_t line() const { return number_; }
    Metadata take_metadata() { return std::move(metadata_); }

private:
    void record_comment(std::string_view body) {
        if (body.empty()) return;
        const auto sep = body.find_first_of(" \t");
        if (sep == std::string_view::npos) {
            metadata_[std::string(body)] = "";
            return;
        }
        metadata_[std::string(body.substr(0, sep))] = std::string(trim(body.substr(sep)));
    }

    std::istream& in_;
    std::string buf_;
    std::size_t number_ = 0;
    Metadata metadata_;
};

}  // namespace

TensorFile parse_tensor_file(std::istream& in) {
    LineReader reader(in);
    std::string text;

    if (!reader.next(text)) throw FormatError("missing 'tensor <N>' header", reader.line());
    auto head = tokens(text);
    if (head.size() != 2 || head[0] != "tensor")
        throw FormatError("expected 'tensor <N>'", reader.line());
    const std::size_t order = parse_count(head[1], reader.line(), "tensor order");
    if (order == 0) throw FormatError("tensor order must be at least 1", reader.line());

    if (!reader.next(text)) throw FormatError("missing 'dims' line", reader.line());
    auto dl = tokens(text);
    if (dl.empty() || dl[0] != "dims") throw FormatError("missing 'dims' line", reader.line());
    if (dl.size() - 1 != order)
        throw FormatError("dims line lists " + std::to_string(dl.size() - 1) +
                              " extents for an order-" + std::to_string(order) + " tensor",
                          reader.line());
    Dims dims;
    for (std::size_t i = 1; i < dl.size(); ++i) {
        dims.push_back(parse_count(dl[i], reader.line(), "extent"));
        if (dims.back() == 0) throw FormatError("extents must be positive", reader.line());
    }
    std::size_t expected = 0;
    try {
        expected = dims_product(dims);
    } catch (const ShapeError& e) {
        throw FormatError(e.what(), reader.line());
    }

    std::vector<double> values;
    values.reserve(expected);
    std::size_t count = 0;
    while (reader.next(text)) {
        for (auto tok : tokens(text)) {
            const double v = parse_scalar(tok, reader.line());
            if (++count <= expected) values.push_back(v);
        }
    }
    if (count != expected) throw LengthError(expected, count, reader.line());

    return {DenseTensor(std::move(dims), std::move(values)), reader.take_metadata()};
}

DenseTensor parse_tensor(std::istream& in) { return parse_tensor_file(in).tensor; }

DenseTensor parse_tensor(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_tensor(in);
}

std::string format_scalar(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

void write_tensor(std::ostream& out, const DenseTensor& t, const Metadata& metadata) {
    out << "tensor " << t.order() << '\n' << "dims";
    for (std::size_t d : t.dims()) out << ' ' << d;
    out << '\n';
    for (const auto& [k, v] : metadata) {
        out << "# " << k;
        if (!v.empty()) out << ' ' << v;
        out << '\n';
    }
    // One mode-1 fiber per line.
    const std::size_t fiber = t.dims().front();
    const auto data = t.data();
    for (std::size_t i = 0; i < data.size(); ++i) {
        out << format_scalar(data[i]);
        out << ((i + 1) % fiber == 0 ? '\n' : ' ');
    }
}

std::string serialize_tensor(const DenseTensor& t, const Metadata& metadata) {
    std::ostringstream out;
    write_tensor(out, t, metadata);
    return out.str();
}

TensorFile read_tensor_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'", 0);
    return parse_tensor_file(in);
}

void write_tensor_file(const std::string& path, const DenseTensor& t, const Metadata& metadata) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    write_tensor(out, t, metadata);
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace tenrank
