#pragma once

// Deterministic key/value report document with nested blocks. All floating
// point output goes through one %.12g formatter so repeated runs, and runs
// at different worker counts, emit byte-identical documents.

#include <cstdint>
#include <string>
#include <vector>

namespace sofic::report {

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

std::string format_double(double v);

class Writer {
public:
    void line(int indent, const std::string& text);
    void kv(int indent, const std::string& key, const std::string& value);
    void kv(int indent, const std::string& key, double value);
    void kv(int indent, const std::string& key, long long value);
    void kv_list(int indent, const std::string& key, const std::vector<double>& values);
    void kv_list(int indent, const std::string& key, const std::vector<int>& values);
    void kv_list(int indent, const std::string& key, const std::vector<long long>& values);
    void blank();

    const std::string& str() const { return out_; }

private:
    std::string out_;
};

}  // namespace sofic::report
