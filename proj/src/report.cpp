#include "moment8/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace moment8::report {

std::string format_double(double x) {
    if (std::isnan(x)) throw std::invalid_argument("format_double: NaN in numeric field");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
}

void JsonWriter::comma() {
    if (first_.empty()) return;
    if (first_.back())
        first_.back() = false;
    else
        out_ += ',';
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ += '{';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::begin_object_element() { return begin_object(); }

JsonWriter& JsonWriter::begin_object(const std::string& key) {
    comma();
    out_ += '"' + key + "\":{";
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
    comma();
    out_ += '"' + key + "\":[";
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    comma();
    out_ += '[';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    first_.pop_back();
    return *this;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

JsonWriter& JsonWriter::field(const std::string& key, double v) {
    comma();
    out_ += '"' + key + "\":" + format_double(v);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, std::int64_t v) {
    comma();
    out_ += '"' + key + "\":" + std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, int v) {
    return field(key, static_cast<std::int64_t>(v));
}

JsonWriter& JsonWriter::field(const std::string& key, bool v) {
    comma();
    out_ += '"' + key + "\":" + (v ? "true" : "false");
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& v) {
    comma();
    out_ += '"' + key + "\":\"" + json_escape(v) + '"';
    return *this;
}

JsonWriter& JsonWriter::element(double v) {
    comma();
    out_ += format_double(v);
    return *this;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string emit_moment_report(const moments::MomentReport& r, Format f) {
    if (f == Format::json) {
        JsonWriter w;
        w.begin_object();
        w.field("q_param", r.Q);
        w.begin_array("per_q");
        for (const auto& e : r.per_q) {
            w.begin_object_element();
            w.field("q", e.q);
            w.field("phi_flat", e.phi_flat);
            w.field("psi_weight", e.psi_weight);
            w.field("lambda8_sum", e.lambda8_sum);
            w.end_object();
        }
        w.end_array();
        w.field("lhs_total", r.lhs_total);
        w.field("main_term", r.main_term);
        w.field("ratio", r.ratio);
        w.field("t_radius", r.t_radius);
        w.field("tail_estimate", r.tail_estimate);
        w.end_object();
        return w.str() + "\n";
    }
    std::string out =
        "record,q,phi_flat,psi_weight,lambda8_sum,q_param,lhs_total,main_term,ratio,t_radius,tail_"
        "estimate\n";
    for (const auto& e : r.per_q) {
        out += "per_q," + std::to_string(e.q) + ',' + std::to_string(e.phi_flat) + ',' +
               format_double(e.psi_weight) + ',' + format_double(e.lambda8_sum) + ",,,,,,\n";
    }
    out += "summary,,,,," + format_double(r.Q) + ',' + format_double(r.lhs_total) + ',' +
           format_double(r.main_term) + ',' + format_double(r.ratio) + ',' +
           format_double(r.t_radius) + ',' + format_double(r.tail_estimate) + "\n";
    return out;
}

namespace {

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') { cur += '"'; ++i; }
            else if (c == '"') quoted = false;
            else cur += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

moments::MomentReport parse_moment_csv(const std::string& csv) {
    moments::MomentReport r;
    std::istringstream in(csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) { header = false; continue; }
        auto f = csv_split(line);
        if (f.size() != 11) throw std::invalid_argument("parse_moment_csv: bad column count");
        if (f[0] == "per_q") {
            moments::PerQEntry e;
            e.q = std::stoll(f[1]);
            e.phi_flat = std::stoll(f[2]);
            e.psi_weight = std::stod(f[3]);
            e.lambda8_sum = std::stod(f[4]);
            r.per_q.push_back(e);
        } else if (f[0] == "summary") {
            r.Q = std::stod(f[5]);
            r.lhs_total = std::stod(f[6]);
            r.main_term = std::stod(f[7]);
            r.ratio = std::stod(f[8]);
            r.t_radius = std::stod(f[9]);
            r.tail_estimate = std::stod(f[10]);
        } else {
            throw std::invalid_argument("parse_moment_csv: unknown record type " + f[0]);
        }
    }
    return r;
}

std::string emit_afe_check(const moments::AfeCheck& c, Format f) {
    if (f == Format::json) {
        JsonWriter w;
        w.begin_object();
        w.field("q", c.q);
        w.field("char_index", c.char_index);
        w.field("lhs", c.lhs);
        w.field("rhs", c.rhs);
        w.field("limit", c.limit);
        w.field("tail_estimate", c.tail_estimate);
        w.field("rel_residual", c.lhs != 0.0 ? std::abs(c.lhs - c.rhs) / std::abs(c.lhs) : 0.0);
        w.end_object();
        return w.str() + "\n";
    }
    std::string out = "q,char_index,lhs,rhs,limit,tail_estimate\n";
    out += std::to_string(c.q) + ',' + std::to_string(c.char_index) + ',' + format_double(c.lhs) +
           ',' + format_double(c.rhs) + ',' + std::to_string(c.limit) + ',' +
           format_double(c.tail_estimate) + "\n";
    return out;
}

bool RunManifest::overall() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string RunManifest::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.field("subcommand", subcommand);
    w.field("config", config_echo);
    w.field("version", version);
    w.field("wall_seconds", wall_seconds);
    w.begin_array("checks");
    for (const auto& c : checks) {
        w.begin_object_element();
        w.field("name", c.name);
        w.field("residual", c.residual);
        w.field("tolerance", c.tolerance);
        w.field("pass", c.pass);
        w.end_object();
    }
    w.end_array();
    w.field("overall", overall());
    w.end_object();
    return w.str() + "\n";
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_output: cannot open " + path);
    out << text;
    if (!out) throw std::runtime_error("write_output: write failed for " + path);
}

}  // namespace moment8::report
