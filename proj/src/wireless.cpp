#include "dyadic/wireless.hpp"

#include "dyadic/detail/text.hpp"
#include "dyadic/io.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dyadic {

namespace {

double norm(const Point& x) { return std::hypot(x[0], x[1]); }

Point relative(const Point& x, const Point& base) { return {x[0] - base[0], x[1] - base[1]}; }

}  // namespace

void WirelessScenario::validate() const {
    if (!(p_max > 0.0) || !std::isfinite(p_max)) {
        throw std::invalid_argument("p_max must be positive");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < devices.size(); ++k) {
        const Device& d = devices[k];
        const std::string id = "device " + std::to_string(k + 1);
        if (!(norm(relative(d.pos, base)) > 0.0)) {
            throw std::invalid_argument(id + " sits on the base station");
        }
        if (!(d.rho >= 0.0 && d.rho <= 1.0)) {
            throw std::invalid_argument(id + " has a TDMA fraction outside [0, 1]");
        }
        total += d.rho;
    }
    if (total > 1.0 + 1e-12) {
        throw std::invalid_argument("TDMA fractions sum to more than 1");
    }
}

double capacity(double distance) {
    if (!(distance > 0.0)) {
        throw std::invalid_argument("capacity needs a positive distance");
    }
    return std::log1p(1.0 / distance);
}

double capacity(const Point& x) { return capacity(norm(x)); }

double pair_capacity(double di, double dj) {
    if (!(di > 0.0) || !(dj > 0.0)) {
        throw std::invalid_argument("pair capacity needs positive distances");
    }
    return std::log1p(1.0 / di + 1.0 / dj);
}

double pair_capacity(const Point& xi, const Point& xj) { return pair_capacity(norm(xi), norm(xj)); }

double pairing_power(const Point& xi, const Point& xj) {
    return std::hypot(xi[0] - xj[0], xi[1] - xj[1]);
}

WeightedGraph build_graph(const WirelessScenario& sc) {
    sc.validate();
    const std::size_t n = sc.devices.size();
    WeightedGraph g(n);
    for (Vertex i = 0; i < n; ++i) {
        const Point xi = relative(sc.devices[i].pos, sc.base);
        for (Vertex j = i + 1; j < n; ++j) {
            const Point xj = relative(sc.devices[j].pos, sc.base);
            if (pairing_power(xi, xj) > sc.p_max) {
                continue;
            }
            const double ri = sc.devices[i].rho;
            const double rj = sc.devices[j].rho;
            const double w = (ri + rj) * pair_capacity(xi, xj) - ri * capacity(xi) - rj * capacity(xj);
            // c_ij exceeds both c_i and c_j, so w can only dip below zero
            // through rounding when both fractions vanish.
            g.add_edge(i, j, std::max(0.0, w));
        }
    }
    return g;
}

ImprovementReport improvement_report(const WirelessScenario& sc, std::span<const double> alloc) {
    if (alloc.size() != sc.devices.size()) {
        throw std::invalid_argument("allocation has " + std::to_string(alloc.size()) +
                                    " entries for " + std::to_string(sc.devices.size()) +
                                    " devices");
    }
    ImprovementReport r;
    double rho_sum = 0.0;
    for (std::size_t k = 0; k < alloc.size(); ++k) {
        const double c = capacity(relative(sc.devices[k].pos, sc.base));
        r.rows.push_back({k + 1, c, alloc[k], 100.0 * alloc[k] / c});
        const double rho = sc.devices[k].rho;
        r.mean.capacity += c;
        r.mean.alloc += alloc[k];
        r.rho_weighted.capacity += rho * c;
        r.rho_weighted.alloc += rho * alloc[k];
        rho_sum += rho;
    }
    if (!r.rows.empty()) {
        const auto count = static_cast<double>(r.rows.size());
        r.mean.capacity /= count;
        r.mean.alloc /= count;
        r.mean.percent = 100.0 * r.mean.alloc / r.mean.capacity;
    }
    if (rho_sum > 0.0) {
        r.rho_weighted.capacity /= rho_sum;
        r.rho_weighted.alloc /= rho_sum;
        r.rho_weighted.percent = 100.0 * r.rho_weighted.alloc / r.rho_weighted.capacity;
    } else {
        r.rho_weighted = NetworkRow{};
    }
    return r;
}

void write_report_text(std::ostream& out, const ImprovementReport& r) {
    std::ostringstream s;
    s << std::fixed;
    s << std::setw(14) << std::left << "device" << std::right << std::setw(10) << "c_i"
      << std::setw(10) << "alpha_i" << std::setw(10) << "percent" << '\n';
    auto line = [&s](const std::string& label, double c, double a, double p) {
        s << std::setw(14) << std::left << label << std::right << std::setprecision(3)
          << std::setw(10) << c << std::setw(10) << a << std::setprecision(1) << std::setw(10)
          << p << '\n';
    };
    for (const auto& row : r.rows) {
        line(std::to_string(row.device), row.capacity, row.alloc, row.percent);
    }
    line("network", r.mean.capacity, r.mean.alloc, r.mean.percent);
    line("network (rho)", r.rho_weighted.capacity, r.rho_weighted.alloc, r.rho_weighted.percent);
    out << s.str();
}

void write_report_csv(std::ostream& out, const ImprovementReport& r) {
    out << "device,capacity,alloc,percent\n";
    for (const auto& row : r.rows) {
        out << row.device << ',' << format_number(row.capacity) << ',' << format_number(row.alloc)
            << ',' << format_number(row.percent) << '\n';
    }
    out << "network_mean," << format_number(r.mean.capacity) << ','
        << format_number(r.mean.alloc) << ',' << format_number(r.mean.percent) << '\n';
    out << "network_rho_weighted," << format_number(r.rho_weighted.capacity) << ','
        << format_number(r.rho_weighted.alloc) << ',' << format_number(r.rho_weighted.percent)
        << '\n';
}

WirelessScenario parse_scenario(std::istream& in, const std::string& source) {
    using detail::to_double;
    WirelessScenario sc;
    std::vector<std::optional<Device>> devices;
    bool have_bs = false;
    bool have_pmax = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tok = detail::tokenize(line);
        if (tok.empty()) {
            continue;
        }
        if (tok[0] == "bs") {
            if (tok.size() != 3) {
                throw ParseError(source, lineno, "expected 'bs <x> <y>'");
            }
            if (have_bs) {
                throw ParseError(source, lineno, "duplicate 'bs' record");
            }
            sc.base = {to_double(tok[1], source, lineno), to_double(tok[2], source, lineno)};
            have_bs = true;
        } else if (tok[0] == "dev") {
            if (tok.size() != 5) {
                throw ParseError(source, lineno, "expected 'dev <id> <x> <y> <rho>'");
            }
            const std::size_t id = detail::to_index(tok[1], source, lineno);
            if (id < 1) {
                throw ParseError(source, lineno, "device ids start at 1");
            }
            if (devices.size() < id) {
                devices.resize(id);
            }
            if (devices[id - 1]) {
                throw ParseError(source, lineno, "duplicate device " + tok[1]);
            }
            devices[id - 1] = Device{{to_double(tok[2], source, lineno),
                                      to_double(tok[3], source, lineno)},
                                     to_double(tok[4], source, lineno)};
        } else if (tok[0] == "pmax") {
            if (tok.size() != 2) {
                throw ParseError(source, lineno, "expected 'pmax <v>'");
            }
            if (have_pmax) {
                throw ParseError(source, lineno, "duplicate 'pmax' record");
            }
            sc.p_max = to_double(tok[1], source, lineno);
            have_pmax = true;
        } else {
            throw ParseError(source, lineno, "unknown record '" + tok[0] + "'");
        }
    }
    if (!have_pmax) {
        throw ParseError(source, lineno, "missing 'pmax' record");
    }
    for (std::size_t k = 0; k < devices.size(); ++k) {
        if (!devices[k]) {
            throw ParseError(source, lineno, "device " + std::to_string(k + 1) + " is missing");
        }
        sc.devices.push_back(*devices[k]);
    }
    try {
        sc.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(source, lineno, e.what());
    }
    return sc;
}

WirelessScenario read_scenario_file(const std::filesystem::path& path) {
    auto in = detail::open_or_throw(path);
    return parse_scenario(in, path.string());
}

}  // namespace dyadic
