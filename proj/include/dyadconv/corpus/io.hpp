#pragma once

// Transcript reading and writing.
//
// Line format (UTF-8, one record per line, fields separated by a single TAB;
// blank lines and lines starting with '#' are ignored):
//
//   session    dyad_id  session_index  relationship  speaker_a  gender_a  speaker_b  gender_b  duration
//   utterance  speaker  start  end  text  [clause_count]  [laughter_count]
//   rapport    slice_index  rating
//   strategy   strategy_kind  speaker  timestamp_seconds
//
// The session record comes first. Inside a field, TAB, newline, carriage
// return and backslash are written as \t, \n, \r and \\. An empty optional
// field means "absent". Records are numbered from 1 in order of appearance,
// counting the session record.
//
// The JSON form uses the same field names:
//   {"dyad_id", "session_index", "relationship",
//    "speakers": [{"speaker", "gender"}, {"speaker", "gender"}], "duration",
//    "utterances": [{"speaker", "start", "end", "text", "clause_count"?, "laughter_count"?}],
//    "rapport": [{"slice_index", "rating"}],
//    "strategies": [{"strategy_kind", "speaker", "timestamp_seconds"}]}

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dyadconv/corpus/session.hpp"
#include "dyadconv/corpus/text.hpp"
#include "dyadconv/error.hpp"
#include "dyadconv/format.hpp"

namespace dyadconv::corpus {

namespace detail {

inline std::string escape_field(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\\': out += "\\\\"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

inline std::string unescape_field(std::string_view s, const std::string& where) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out.push_back(s[i]);
            continue;
        }
        if (i + 1 == s.size()) throw SchemaError(where + ": dangling escape");
        switch (s[++i]) {
            case 't': out.push_back('\t'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            case '\\': out.push_back('\\'); break;
            default: throw SchemaError(where + ": unknown escape sequence");
        }
    }
    return out;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t b = 0;
    for (;;) {
        const std::size_t e = line.find('\t', b);
        if (e == std::string_view::npos) {
            out.push_back(line.substr(b));
            return out;
        }
        out.push_back(line.substr(b, e - b));
        b = e + 1;
    }
}

inline void finish(Session& s) {
    std::stable_sort(s.utterances.begin(), s.utterances.end(),
                     [](const Utterance& a, const Utterance& b) { return a.start < b.start; });
    std::stable_sort(s.rapport.begin(), s.rapport.end(),
                     [](const RapportRating& a, const RapportRating& b) { return a.slice_index < b.slice_index; });
    for (auto& [kind, per_speaker] : s.strategies) {
        for (auto& [speaker, times] : per_speaker) std::sort(times.begin(), times.end());
    }
    validate(s);
}

class RecordReader {
public:
    RecordReader(std::size_t record, std::vector<std::string_view> fields)
        : record_(record), fields_(std::move(fields)) {}

    [[nodiscard]] std::string where(std::string_view field) const {
        return "record " + std::to_string(record_) + ", field '" + std::string(field) + "'";
    }

    void require_fields(std::size_t min, std::size_t max, std::string_view kind) const {
        if (fields_.size() < min || fields_.size() > max) {
            throw SchemaError("record " + std::to_string(record_) + ": " + std::string(kind) + " record has " +
                              std::to_string(fields_.size() - 1) + " fields, expected " +
                              std::to_string(min - 1) + (max != min ? ".." + std::to_string(max - 1) : ""));
        }
    }

    [[nodiscard]] bool present(std::size_t i) const { return i < fields_.size() && !fields_[i].empty(); }

    [[nodiscard]] std::string text(std::size_t i, std::string_view name) const {
        return unescape_field(fields_.at(i), where(name));
    }

    [[nodiscard]] double number(std::size_t i, std::string_view name) const {
        const auto v = parse_double(fields_.at(i));
        if (!v || !std::isfinite(*v)) throw SchemaError(where(name) + ": not a finite number");
        return *v;
    }

    template <typename Int>
    [[nodiscard]] Int integer(std::size_t i, std::string_view name) const {
        const auto v = parse_int<Int>(fields_.at(i));
        if (!v) throw SchemaError(where(name) + ": not an integer");
        return *v;
    }

private:
    std::size_t record_;
    std::vector<std::string_view> fields_;
};

inline std::string record_error(std::size_t record, const std::string& what) {
    return "record " + std::to_string(record) + ": " + what;
}

/// Per-record checks shared by both input formats.
inline void check_utterance(const Session& s, const Utterance& u, const std::string& where) {
    if (!s.has_speaker(u.speaker)) {
        throw SchemaError(where + ": session must have exactly two speakers (unknown speaker '" + u.speaker + "')");
    }
    if (u.start < 0.0) throw SchemaError(where + ", field 'start': negative timestamp");
    if (u.end < u.start) throw SchemaError(where + ", field 'end': end < start");
    if (u.end > s.duration) throw SchemaError(where + ", field 'end': exceeds session duration");
    if (u.clause_count && *u.clause_count < 0) throw SchemaError(where + ", field 'clause_count': negative");
    if (u.laughter_count < 0) throw SchemaError(where + ", field 'laughter_count': negative");
}

}  // namespace detail

/// Parse the TAB-separated transcript form.
inline Session parse_session_tsv(std::string_view document) {
    Session s;
    bool have_header = false;
    std::size_t record = 0;
    std::size_t pos = 0;
    while (pos <= document.size()) {
        std::size_t eol = document.find('\n', pos);
        if (eol == std::string_view::npos) eol = document.size();
        std::string_view line = document.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        ++record;
        detail::RecordReader r(record, detail::split_tabs(line));
        const auto fields = detail::split_tabs(line);
        const std::string_view kind = fields.front();
        if (!have_header) {
            if (kind != "session") {
                throw SchemaError(detail::record_error(record, "first record must be the session header"));
            }
            r.require_fields(9, 9, "session");
            s.dyad_id = r.text(1, "dyad_id");
            s.session_index = r.integer<int>(2, "session_index");
            const auto rel = parse_relationship(fields[3]);
            if (!rel) throw SchemaError(r.where("relationship") + ": expected friends|strangers");
            s.relationship = *rel;
            s.speakers[0] = {r.text(4, "speaker_a"), r.text(5, "gender_a")};
            s.speakers[1] = {r.text(6, "speaker_b"), r.text(7, "gender_b")};
            s.duration = r.number(8, "duration");
            have_header = true;
            continue;
        }
        if (kind == "utterance") {
            r.require_fields(5, 7, "utterance");
            Utterance u;
            u.speaker = r.text(1, "speaker");
            u.start = r.number(2, "start");
            u.end = r.number(3, "end");
            u.text = r.text(4, "text");
            if (r.present(5)) u.clause_count = r.integer<int>(5, "clause_count");
            u.laughter_count = r.present(6) ? r.integer<int>(6, "laughter_count") : count_laughter_markers(u.text);
            detail::check_utterance(s, u, "record " + std::to_string(record));
            s.utterances.push_back(std::move(u));
        } else if (kind == "rapport") {
            r.require_fields(3, 3, "rapport");
            s.rapport.push_back({r.integer<std::size_t>(1, "slice_index"), r.number(2, "rating")});
            if (!(s.rapport.back().rating >= 1.0 && s.rapport.back().rating <= 7.0)) {
                throw SchemaError(r.where("rating") + ": outside [1,7]");
            }
        } else if (kind == "strategy") {
            r.require_fields(4, 4, "strategy");
            const auto k = parse_strategy_kind(fields[1]);
            if (!k) throw SchemaError(r.where("strategy_kind") + ": expected self_disclosure|shared_experience|praise");
            const std::string speaker = r.text(2, "speaker");
            if (!s.has_speaker(speaker)) {
                throw SchemaError(detail::record_error(
                    record, "session must have exactly two speakers (unknown speaker '" + speaker + "')"));
            }
            const double t = r.number(3, "timestamp_seconds");
            if (t < 0.0 || t > s.duration) throw SchemaError(r.where("timestamp_seconds") + ": outside [0, duration]");
            s.strategies[*k][speaker].push_back(t);
        } else if (kind == "session") {
            throw SchemaError(detail::record_error(record, "duplicate session header"));
        } else {
            throw SchemaError(detail::record_error(record, "unknown record type '" + std::string(kind) + "'"));
        }
    }
    if (!have_header) throw SchemaError("document has no session header record");
    detail::finish(s);
    return s;
}

/// Parse the JSON transcript form.
inline Session parse_session_json(std::string_view document) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    auto field = [](const json& obj, const char* name, const std::string& where) -> const json& {
        if (!obj.is_object() || !obj.contains(name)) {
            throw SchemaError(where + ": missing field '" + name + "'");
        }
        return obj.at(name);
    };
    auto str = [&](const json& obj, const char* name, const std::string& where) {
        const json& v = field(obj, name, where);
        if (!v.is_string()) throw SchemaError(where + ", field '" + name + "': expected string");
        return v.get<std::string>();
    };
    auto num = [&](const json& obj, const char* name, const std::string& where) {
        const json& v = field(obj, name, where);
        if (!v.is_number()) throw SchemaError(where + ", field '" + name + "': expected number");
        return v.get<double>();
    };
    auto integer = [&](const json& obj, const char* name, const std::string& where) {
        const json& v = field(obj, name, where);
        if (!v.is_number_integer()) throw SchemaError(where + ", field '" + name + "': expected integer");
        return v.get<long long>();
    };

    Session s;
    const std::string hdr = "session header";
    s.dyad_id = str(doc, "dyad_id", hdr);
    s.session_index = static_cast<int>(integer(doc, "session_index", hdr));
    const auto rel = parse_relationship(str(doc, "relationship", hdr));
    if (!rel) throw SchemaError(hdr + ", field 'relationship': expected friends|strangers");
    s.relationship = *rel;
    const json& speakers = field(doc, "speakers", hdr);
    if (!speakers.is_array() || speakers.size() != 2) {
        throw SchemaError("session must have exactly two speakers");
    }
    for (std::size_t i = 0; i < 2; ++i) {
        const std::string where = "speakers[" + std::to_string(i) + "]";
        s.speakers[i] = {str(speakers[i], "speaker", where), str(speakers[i], "gender", where)};
    }
    s.duration = num(doc, "duration", hdr);

    if (doc.contains("utterances")) {
        const json& arr = doc.at("utterances");
        if (!arr.is_array()) throw SchemaError(hdr + ", field 'utterances': expected array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "utterances[" + std::to_string(i) + "]";
            Utterance u;
            u.speaker = str(arr[i], "speaker", where);
            u.start = num(arr[i], "start", where);
            u.end = num(arr[i], "end", where);
            u.text = str(arr[i], "text", where);
            if (arr[i].contains("clause_count") && !arr[i].at("clause_count").is_null()) {
                u.clause_count = static_cast<int>(integer(arr[i], "clause_count", where));
            }
            if (arr[i].contains("laughter_count") && !arr[i].at("laughter_count").is_null()) {
                u.laughter_count = static_cast<int>(integer(arr[i], "laughter_count", where));
            } else {
                u.laughter_count = count_laughter_markers(u.text);
            }
            detail::check_utterance(s, u, where);
            s.utterances.push_back(std::move(u));
        }
    }
    if (doc.contains("rapport")) {
        const json& arr = doc.at("rapport");
        if (!arr.is_array()) throw SchemaError(hdr + ", field 'rapport': expected array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "rapport[" + std::to_string(i) + "]";
            const auto idx = integer(arr[i], "slice_index", where);
            if (idx < 0) throw SchemaError(where + ", field 'slice_index': negative");
            s.rapport.push_back({static_cast<std::size_t>(idx), num(arr[i], "rating", where)});
        }
    }
    if (doc.contains("strategies")) {
        const json& arr = doc.at("strategies");
        if (!arr.is_array()) throw SchemaError(hdr + ", field 'strategies': expected array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "strategies[" + std::to_string(i) + "]";
            const auto k = parse_strategy_kind(str(arr[i], "strategy_kind", where));
            if (!k) throw SchemaError(where + ", field 'strategy_kind': unknown strategy");
            const std::string speaker = str(arr[i], "speaker", where);
            if (!s.has_speaker(speaker)) {
                throw SchemaError(where + ": session must have exactly two speakers (unknown speaker '" + speaker + "')");
            }
            s.strategies[*k][speaker].push_back(num(arr[i], "timestamp_seconds", where));
        }
    }
    detail::finish(s);
    return s;
}

/// Parse either form; a document whose first non-space character is '{' is JSON.
inline Session parse_session(std::string_view document) {
    const auto first = document.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && document[first] == '{') return parse_session_json(document);
    return parse_session_tsv(document);
}

inline std::string serialize_session_tsv(const Session& s) {
    using detail::escape_field;
    std::ostringstream out;
    out << "session\t" << escape_field(s.dyad_id) << '\t' << s.session_index << '\t' << to_string(s.relationship)
        << '\t' << escape_field(s.speakers[0].id) << '\t' << escape_field(s.speakers[0].gender) << '\t'
        << escape_field(s.speakers[1].id) << '\t' << escape_field(s.speakers[1].gender) << '\t'
        << format_double(s.duration) << '\n';
    for (const auto& u : s.utterances) {
        out << "utterance\t" << escape_field(u.speaker) << '\t' << format_double(u.start) << '\t'
            << format_double(u.end) << '\t' << escape_field(u.text) << '\t';
        if (u.clause_count) out << *u.clause_count;
        out << '\t' << u.laughter_count << '\n';
    }
    for (const auto& r : s.rapport) {
        out << "rapport\t" << r.slice_index << '\t' << format_double(r.rating) << '\n';
    }
    for (const auto& [kind, per_speaker] : s.strategies) {
        for (const auto& [speaker, times] : per_speaker) {
            for (double t : times) {
                out << "strategy\t" << to_string(kind) << '\t' << escape_field(speaker) << '\t' << format_double(t)
                    << '\n';
            }
        }
    }
    return out.str();
}

inline std::string serialize_session_json(const Session& s) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["dyad_id"] = s.dyad_id;
    doc["session_index"] = s.session_index;
    doc["relationship"] = std::string(to_string(s.relationship));
    doc["speakers"] = ordered_json::array();
    for (const auto& sp : s.speakers) doc["speakers"].push_back({{"speaker", sp.id}, {"gender", sp.gender}});
    doc["duration"] = s.duration;
    doc["utterances"] = ordered_json::array();
    for (const auto& u : s.utterances) {
        ordered_json j{{"speaker", u.speaker}, {"start", u.start}, {"end", u.end}, {"text", u.text}};
        if (u.clause_count) j["clause_count"] = *u.clause_count;
        j["laughter_count"] = u.laughter_count;
        doc["utterances"].push_back(std::move(j));
    }
    doc["rapport"] = ordered_json::array();
    for (const auto& r : s.rapport) doc["rapport"].push_back({{"slice_index", r.slice_index}, {"rating", r.rating}});
    doc["strategies"] = ordered_json::array();
    for (const auto& [kind, per_speaker] : s.strategies) {
        for (const auto& [speaker, times] : per_speaker) {
            for (double t : times) {
                doc["strategies"].push_back(
                    {{"strategy_kind", std::string(to_string(kind))}, {"speaker", speaker}, {"timestamp_seconds", t}});
            }
        }
    }
    return doc.dump(2) + "\n";
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Load a transcript; the path is prefixed to any schema error.
inline Session load_session(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    try {
        return parse_session(text);
    } catch (const SchemaError& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

}  // namespace dyadconv::corpus
