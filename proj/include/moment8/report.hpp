#ifndef MOMENT8_REPORT_HPP
#define MOMENT8_REPORT_HPP

// Report serialization for the CLI: JSON with stable key order and CSV with
// RFC-4180 quoting. Floats are printed with 17 significant digits; NaN in
// any numeric field is rejected (it is always a bug upstream).

#include <cstdint>
#include <string>
#include <vector>

#include "moment8/moments.hpp"

namespace moment8::report {

std::string format_double(double x);  // %.17g, rejects NaN

// Minimal ordered JSON writer.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key);
    JsonWriter& begin_array();  // element of enclosing array
    JsonWriter& end_array();
    JsonWriter& begin_object(const std::string& key);
    JsonWriter& begin_object_element();
    JsonWriter& field(const std::string& key, double v);
    JsonWriter& field(const std::string& key, std::int64_t v);
    JsonWriter& field(const std::string& key, int v);
    JsonWriter& field(const std::string& key, bool v);
    JsonWriter& field(const std::string& key, const std::string& v);
    JsonWriter& element(double v);
    std::string str() const { return out_; }

private:
    void comma();
    std::string out_;
    std::vector<bool> first_;  // per nesting level
};

std::string csv_quote(const std::string& field);

enum class Format { json, csv };

std::string emit_moment_report(const moments::MomentReport& r, Format f);
moments::MomentReport parse_moment_csv(const std::string& csv);

std::string emit_afe_check(const moments::AfeCheck& c, Format f);

struct CheckResult {
    std::string name;
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
};

struct RunManifest {
    std::string subcommand;
    std::string config_echo;
    std::string version;
    double wall_seconds = 0;
    std::vector<CheckResult> checks;
    bool overall() const;
    std::string to_json() const;
};

// Write `text` to path, or to stdout when path is empty.
void write_output(const std::string& text, const std::string& path);

}  // namespace moment8::report

#endif
