#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace zstab {

/// Minimal streaming JSON writer with deterministic output: keys appear in
/// insertion order and every double is rendered as %.15e, so identical
/// invocations produce byte-identical reports.
class JsonWriter {
public:
    JsonWriter& begin_object() { return token("{", Open::Yes); }
    JsonWriter& end_object() { return close("}"); }
    JsonWriter& begin_array() { return token("[", Open::Yes); }
    JsonWriter& end_array() { return close("]"); }

    JsonWriter& key(const std::string& name) {
        comma();
        out_ << quote(name) << ":";
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(double x) { return raw(format(x)); }
    JsonWriter& value(int x) { return raw(std::to_string(x)); }
    JsonWriter& value(long x) { return raw(std::to_string(x)); }
    JsonWriter& value(std::size_t x) { return raw(std::to_string(x)); }
    JsonWriter& value(bool x) { return raw(x ? "true" : "false"); }
    JsonWriter& value(const char* s) { return raw(quote(s)); }
    JsonWriter& value(const std::string& s) { return raw(quote(s)); }
    JsonWriter& null() { return raw("null"); }

    template <typename Range>
    JsonWriter& value_array(const Range& xs) {
        begin_array();
        for (const auto& x : xs) value(x);
        return end_array();
    }

    /// Embeds pre-rendered JSON verbatim.
    JsonWriter& raw(const std::string& text) {
        if (!pending_value_) comma();
        pending_value_ = false;
        out_ << text;
        need_comma_ = true;
        return *this;
    }

    [[nodiscard]] std::string str() const { return out_.str(); }

    static std::string format(double x) {
        if (!std::isfinite(x)) return std::isnan(x) ? "null" : (x > 0 ? "\"inf\"" : "\"-inf\"");
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.15e", x);
        return buf;
    }

    static std::string quote(const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            switch (c) {
                case '"': q += "\\\""; break;
                case '\\': q += "\\\\"; break;
                case '\n': q += "\\n"; break;
                case '\t': q += "\\t"; break;
                default: q += c;
            }
        }
        q += "\"";
        return q;
    }

private:
    enum class Open { No, Yes };

    JsonWriter& token(const char* t, Open) {
        if (!pending_value_) comma();
        pending_value_ = false;
        out_ << t;
        need_comma_ = false;
        return *this;
    }

    JsonWriter& close(const char* t) {
        out_ << t;
        need_comma_ = true;
        pending_value_ = false;
        return *this;
    }

    void comma() {
        if (need_comma_) out_ << ",";
        need_comma_ = false;
    }

    std::ostringstream out_;
    bool need_comma_ = false;
    bool pending_value_ = false;
};

}  // namespace zstab
