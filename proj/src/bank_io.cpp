#include "scatnet/bank_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scatnet {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string filter_spec(const Filter& f) {
    std::string s = f.label.str();
    s += f.role == FilterRole::output_generating ? ":output" : ":band";
    if (f.orthant) {
        s += ":o=";
        for (std::size_t i = 0; i < f.orthant->size(); ++i) {
            if (i) s += ',';
            s += fmt((*f.orthant)[i]);
        }
    }
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find(sep, start);
        if (end == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

Filter parse_filter_spec(const std::string& spec, int dim) {
    auto parts = split(spec, ':');
    if (parts.size() < 2) throw std::runtime_error("bank header: malformed filter spec " + spec);
    Filter f;
    if (parts[0] == "chi") {
        f.label = FilterLabel{true, 0};
    } else {
        f.label = FilterLabel{false, std::stoi(parts[0])};
    }
    if (parts[1] == "output")
        f.role = FilterRole::output_generating;
    else if (parts[1] == "band")
        f.role = FilterRole::band_pass;
    else
        throw std::runtime_error("bank header: unknown filter role " + parts[1]);
    if (parts.size() > 2) {
        if (parts[2].rfind("o=", 0) != 0)
            throw std::runtime_error("bank header: malformed orthant in " + spec);
        auto nums = split(parts[2].substr(2), ',');
        if (nums.size() != static_cast<std::size_t>(dim) * dim)
            throw std::runtime_error("bank header: orthant size mismatch in " + spec);
        std::vector<double> rot;
        for (const auto& t : nums) rot.push_back(std::stod(t));
        f.orthant = std::move(rot);
    }
    return f;
}

struct Header {
    std::string tag;
    int dim = 0;
    int n = 0;
    double omega_max = 0.0;
    std::string filters;
};

Header parse_header(std::istream& is, const std::string& expect_tag) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("import: empty stream");
    std::istringstream ls(line);
    std::string hash, tag, version;
    ls >> hash >> tag >> version;
    if (hash != "#" || tag != expect_tag || version != "v1")
        throw std::runtime_error("import: expected '# " + expect_tag + " v1' header");
    Header h;
    h.tag = tag;
    std::string kv;
    while (ls >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::runtime_error("import: malformed header field " + kv);
        std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "dim")
            h.dim = std::stoi(val);
        else if (key == "n")
            h.n = std::stoi(val);
        else if (key == "omega_max")
            h.omega_max = std::stod(val);
        else if (key == "filters")
            h.filters = val;
        else
            throw std::runtime_error("import: unknown header field " + key);
    }
    if (h.dim == 0 || h.n == 0 || h.omega_max == 0.0)
        throw std::runtime_error("import: header missing dim/n/omega_max");
    return h;
}

void write_rows(std::ostream& os, const FrequencyGrid& grid,
                const std::vector<const std::vector<cplx>*>& columns) {
    double w[2];
    for (std::size_t a = 0; a < grid.size(); ++a) {
        std::size_t flat = grid.flat_from_ascending(a);
        grid.frequency(flat, w);
        os << fmt(w[0]);
        if (grid.dim() == 2) os << ' ' << fmt(w[1]);
        for (const auto* col : columns) {
            const cplx& z = (*col)[flat];
            os << ' ' << fmt(z.real()) << ' ' << fmt(z.imag());
        }
        os << '\n';
    }
}

void read_rows(std::istream& is, const FrequencyGrid& grid,
               const std::vector<std::vector<cplx>*>& columns) {
    std::string line;
    for (std::size_t a = 0; a < grid.size(); ++a) {
        if (!std::getline(is, line)) throw std::runtime_error("import: truncated data rows");
        std::istringstream ls(line);
        double w;
        for (int k = 0; k < grid.dim(); ++k)
            if (!(ls >> w)) throw std::runtime_error("import: bad frequency column");
        std::size_t flat = grid.flat_from_ascending(a);
        for (auto* col : columns) {
            double re, im;
            if (!(ls >> re >> im)) throw std::runtime_error("import: bad sample column");
            (*col)[flat] = cplx(re, im);
        }
    }
}

}  // namespace

void export_bank(std::ostream& os, const FilterBank& bank) {
    os << "# scatnet-bank v1 dim=" << bank.grid.dim() << " n=" << bank.grid.samples_per_axis()
       << " omega_max=" << fmt(bank.grid.omega_max()) << " filters=" << filter_spec(bank.chi);
    for (const auto& f : bank.bands) os << ';' << filter_spec(f);
    os << '\n';
    std::vector<const std::vector<cplx>*> cols{&bank.chi.spectral};
    for (const auto& f : bank.bands) cols.push_back(&f.spectral);
    write_rows(os, bank.grid, cols);
}

FilterBank import_bank(std::istream& is) {
    Header h = parse_header(is, "scatnet-bank");
    FrequencyGrid grid(h.dim, h.n, h.omega_max);
    if (h.filters.empty()) throw std::runtime_error("import: bank header missing filters");
    std::vector<Filter> filters;
    for (const auto& spec : split(h.filters, ';')) filters.push_back(parse_filter_spec(spec, h.dim));
    if (!filters.front().label.is_chi)
        throw std::runtime_error("import: first bank column must be chi");
    for (auto& f : filters) f.spectral.assign(grid.size(), cplx(0.0, 0.0));
    std::vector<std::vector<cplx>*> cols;
    for (auto& f : filters) cols.push_back(&f.spectral);
    read_rows(is, grid, cols);
    Filter chi = std::move(filters.front());
    filters.erase(filters.begin());
    return FilterBank::assemble(grid, std::move(chi), std::move(filters));
}

void export_signal(std::ostream& os, const Signal& f) {
    const FrequencyGrid& grid = f.grid();
    os << "# scatnet-signal v1 dim=" << grid.dim() << " n=" << grid.samples_per_axis()
       << " omega_max=" << fmt(grid.omega_max()) << '\n';
    write_rows(os, grid, {&f.spectral()});
}

Signal import_signal(std::istream& is) {
    Header h = parse_header(is, "scatnet-signal");
    FrequencyGrid grid(h.dim, h.n, h.omega_max);
    std::vector<cplx> data(grid.size());
    read_rows(is, grid, {&data});
    return Signal::from_spectral(grid, std::move(data));
}

void export_bank_file(const std::string& path, const FilterBank& bank) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    export_bank(os, bank);
}

FilterBank import_bank_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return import_bank(is);
}

void export_signal_file(const std::string& path, const Signal& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    export_signal(os, f);
}

Signal import_signal_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return import_signal(is);
}

}  // namespace scatnet
