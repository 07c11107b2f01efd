#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace smoothprog::report {

std::string format_number(double v)
{
    if (!std::isfinite(v))
        return "null";
    if (v == 0.0)
        return "0";
    const double mag = std::abs(v);
    const char* fmt = (mag >= 1e-4 && mag < 1e6) ? "%.12g" : "%.11e";
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

namespace {

void dump(const nlohmann::json& j, std::ostringstream& os, int depth)
{
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close(2 * depth, ' ');
    switch (j.type()) {
    case nlohmann::json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                os << ",\n";
            first = false;
            os << pad << nlohmann::json(it.key()).dump() << ": ";
            dump(it.value(), os, depth + 1);
        }
        os << "\n" << close << "}";
        return;
    }
    case nlohmann::json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i)
                os << ",\n";
            os << pad;
            dump(j[i], os, depth + 1);
        }
        os << "\n" << close << "]";
        return;
    }
    case nlohmann::json::value_t::number_float:
        os << format_number(j.get<double>());
        return;
    default:
        os << j.dump();
        return;
    }
}

std::string csv_field(const nlohmann::json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_float())
        return format_number(v.get<double>());
    if (v.is_null())
        return "";
    return v.dump();
}

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

void flatten(const nlohmann::json& j, const std::string& prefix, std::ostringstream& os)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "." + std::to_string(i), os);
    } else {
        os << prefix << "," << (j.is_string() ? quoted(j.get<std::string>()) : csv_field(j)) << "\n";
    }
}

} // namespace

std::string to_canonical_json(const nlohmann::json& j)
{
    std::ostringstream os;
    dump(j, os, 0);
    os << "\n";
    return os.str();
}

std::string to_csv(const nlohmann::json& report)
{
    std::ostringstream os;
    const std::string command = report.at("config").at("command").get<std::string>();
    if (command == "equidist" || command == "psi") {
        os << "residue,count,normalized,deviation\n";
        for (const auto& row : report.at("counts").at("per_residue"))
            os << csv_field(row.at("residue")) << "," << csv_field(row.at("count")) << ","
               << csv_field(row.at("normalized")) << "," << csv_field(row.at("deviation")) << "\n";
    } else if (command == "spectrum") {
        os << "char_id,order,ratio\n";
        for (const auto& row : report.at("spectrum"))
            os << quoted(row.at("char_id").get<std::string>()) << "," << csv_field(row.at("order")) << ","
               << csv_field(row.at("ratio")) << "\n";
    } else if (command == "subgroup") {
        os << "coset_rep,residue,count,deviation_from_coset_mean\n";
        for (const auto& coset : report.at("problem_set").at("cosets"))
            for (const auto& row : coset.at("residues"))
                os << csv_field(coset.at("representative")) << "," << csv_field(row.at("residue")) << ","
                   << csv_field(row.at("count")) << "," << csv_field(row.at("deviation_from_coset_mean")) << "\n";
    } else {
        os << "key,value\n";
        flatten(report.at("saddle"), "saddle", os);
    }
    return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& text)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << text;
        out.flush();
        if (!out)
            throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot move output into place: " + ec.message());
    }
}

} // namespace smoothprog::report
