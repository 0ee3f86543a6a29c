#include "sofic/report.hpp"

#include <cstdio>

namespace sofic::report {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void Writer::line(int indent, const std::string& text) {
    out_.append(static_cast<std::size_t>(indent) * 2, ' ');
    out_ += text;
    out_ += '\n';
}

void Writer::kv(int indent, const std::string& key, const std::string& value) {
    line(indent, key + ": " + value);
}

void Writer::kv(int indent, const std::string& key, double value) {
    kv(indent, key, format_double(value));
}

void Writer::kv(int indent, const std::string& key, long long value) {
    kv(indent, key, std::to_string(value));
}

namespace {

template <typename T, typename F>
std::string join(const std::vector<T>& values, F fmt) {
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ", ";
        s += fmt(values[i]);
    }
    s += "]";
    return s;
}

}  // namespace

void Writer::kv_list(int indent, const std::string& key, const std::vector<double>& values) {
    kv(indent, key, join(values, [](double v) { return format_double(v); }));
}

void Writer::kv_list(int indent, const std::string& key, const std::vector<int>& values) {
    kv(indent, key, join(values, [](int v) { return std::to_string(v); }));
}

void Writer::kv_list(int indent, const std::string& key, const std::vector<long long>& values) {
    kv(indent, key, join(values, [](long long v) { return std::to_string(v); }));
}

void Writer::blank() { out_ += '\n'; }

}  // namespace sofic::report
