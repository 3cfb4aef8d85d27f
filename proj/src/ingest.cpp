#include "portfolio/ingest.hpp"

#include <cctype>
#include <cstdint>
#include <istream>
#include <iterator>
#include <utility>

#include "portfolio/errors.hpp"

namespace portfolio {
namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string utf16le_to_utf8(const std::string& bytes, std::size_t offset) {
    if ((bytes.size() - offset) % 2 != 0)
        throw ParseError(0, "truncated UTF-16LE stream (odd byte count)");
    std::string out;
    out.reserve(bytes.size() / 2);
    for (std::size_t i = offset; i < bytes.size(); i += 2) {
        const std::uint32_t lo8 = static_cast<unsigned char>(bytes[i]);
        const std::uint32_t hi8 = static_cast<unsigned char>(bytes[i + 1]);
        std::uint32_t unit = lo8 | (hi8 << 8);
        if (unit >= 0xD800 && unit <= 0xDBFF) {  // high surrogate
            if (i + 3 >= bytes.size()) throw ParseError(0, "unpaired UTF-16 surrogate");
            const std::uint32_t lo_unit = static_cast<unsigned char>(bytes[i + 2]) |
                                          (static_cast<std::uint32_t>(
                                               static_cast<unsigned char>(bytes[i + 3]))
                                           << 8);
            if (lo_unit < 0xDC00 || lo_unit > 0xDFFF)
                throw ParseError(0, "unpaired UTF-16 surrogate");
            unit = 0x10000 + ((unit - 0xD800) << 10) + (lo_unit - 0xDC00);
            i += 2;
        } else if (unit >= 0xDC00 && unit <= 0xDFFF) {
            throw ParseError(0, "unpaired UTF-16 surrogate");
        }
        append_utf8(out, unit);
    }
    return out;
}

// Whole-stream decode: UTF-16LE (BOM FF FE) is transcoded, a UTF-8 BOM is
// stripped, a UTF-16BE BOM is refused, anything else passes through.
std::string decode_export_bytes(std::string bytes) {
    if (bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0xFF &&
        static_cast<unsigned char>(bytes[1]) == 0xFE)
        return utf16le_to_utf8(bytes, 2);
    if (bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0xFE &&
        static_cast<unsigned char>(bytes[1]) == 0xFF)
        throw ParseError(0, "UTF-16BE exports are not supported; use UTF-8 or UTF-16LE");
    if (bytes.size() >= 3 && bytes.compare(0, 3, "\xEF\xBB\xBF") == 0) bytes.erase(0, 3);
    return bytes;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

// The record-count column with thousands separators and padding removed.
// WoS writes "1,203" and occasionally uses spaces or NBSP (UTF-8 C2 A0).
std::string strip_separators(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (c == ',' || c == ' ') continue;
        if (c == 0xC2 && i + 1 < s.size() &&
            static_cast<unsigned char>(s[i + 1]) == 0xA0) {
            ++i;
            continue;
        }
        out.push_back(static_cast<char>(c));
    }
    return out;
}

bool looks_numeric(const std::string& s) {
    if (s.empty()) return false;
    if (std::isdigit(static_cast<unsigned char>(s[0]))) return true;
    return (s[0] == '+' || s[0] == '-') && s.size() > 1 &&
           std::isdigit(static_cast<unsigned char>(s[1]));
}

std::int64_t parse_count(const std::string& s, std::size_t line) {
    std::size_t pos = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    std::int64_t value = 0;
    for (; pos < s.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError(line, "malformed record count '" + s + "'");
        if (value > (INT64_MAX - (s[pos] - '0')) / 10)
            throw ParseError(line, "record count out of range");
        value = value * 10 + (s[pos] - '0');
    }
    if (s[0] == '-') value = -value;
    if (value < 1) throw ParseError(line, "record count must be a positive integer");
    return value;
}

}  // namespace

RawPortfolio parse_analyze_export(std::istream& in, std::string unit_label) {
    const std::string bytes{std::istreambuf_iterator<char>(in),
                            std::istreambuf_iterator<char>()};
    const std::string text = decode_export_bytes(bytes);

    RawPortfolio raw;
    raw.unit_label = std::move(unit_label);

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        std::string_view line(text.data() + pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (pos > text.size() && line.empty()) break;  // no trailing newline artifact
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;

        const std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos) continue;  // no count column: structural

        const std::string_view title_field = trim(line.substr(0, tab));
        std::string_view count_field = line.substr(tab + 1);
        if (const std::size_t tab2 = count_field.find('\t'); tab2 != std::string_view::npos)
            count_field = count_field.substr(0, tab2);

        const std::string count_text = strip_separators(trim(count_field));
        if (!looks_numeric(count_text)) continue;  // header or footer line

        if (title_field.empty()) throw ParseError(line_no, "data row has an empty title");
        RawRow row;
        row.source_title = std::string(title_field);
        row.record_count = parse_count(count_text, line_no);
        raw.total_records += row.record_count;
        raw.rows.push_back(std::move(row));
    }
    if (raw.rows.empty())
        throw ParseError(0, "export contains no data rows");
    return raw;
}

PortfolioDistribution match_portfolio(const RawPortfolio& raw, const BaseMap& map) {
    PortfolioDistribution dist;
    dist.unit_label = raw.unit_label;
    for (const RawRow& row : raw.rows) {
        if (const auto id = map.lookup_title(row.source_title)) {
            dist.entries[*id] += row.record_count;
            dist.matched_records += row.record_count;
        } else {
            dist.unmatched.push_back(row);
        }
    }
    if (dist.matched_records > 0) {
        for (const auto& [id, count] : dist.entries)
            dist.proportions[id] =
                static_cast<double>(count) / static_cast<double>(dist.matched_records);
    }
    if (raw.total_records > 0)
        dist.coverage = static_cast<double>(dist.matched_records) /
                        static_cast<double>(raw.total_records);
    if (dist.matched_records == 0)
        dist.warnings.push_back("unit '" + dist.unit_label +
                                "': no titles matched the base map");
    return dist;
}

}  // namespace portfolio
