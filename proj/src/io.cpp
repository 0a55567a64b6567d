#include "stretchpack/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stretchpack {

using ojson = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
    std::string s = trim(text);
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    if (s.empty()) throw ParseError("empty rational: '" + text + "'");

    mpz_class num, den;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q)) {
            throw ParseError("malformed rational: '" + text + "'");
        }
        num = mpz_class(p);
        den = mpz_class(q);
        if (den == 0) throw ParseError("zero denominator: '" + text + "'");
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string d = s.substr(0, dot), f = s.substr(dot + 1);
        if (!all_digits(d) || !all_digits(f) || f.size() > 9) {
            throw ParseError("malformed decimal: '" + text + "'");
        }
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, f.size());
        num = mpz_class(d) * scale + mpz_class(f);
        den = scale;
    } else {
        if (!all_digits(s)) throw ParseError("malformed number: '" + text + "'");
        num = mpz_class(s);
        den = 1;
    }
    if (negative) num = -num;
    return Rat::from_parts(num, den);
}

std::string format_rational(const Rat& r) { return r.str(); }

Instance parse_instance(std::istream& in) {
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        lines.push_back(line);
    }

    std::size_t pos = 0;
    auto next = [&]() -> std::string {
        if (pos >= lines.size()) throw ParseError("unexpected end of instance file");
        return lines[pos++];
    };

    std::istringstream mline(next());
    std::string kw;
    long m = 0;
    if (!(mline >> kw >> m) || kw != "m" || m < 1) {
        throw ParseError("instance file must start with 'm <positive int>'");
    }

    long scale = 12;
    if (pos < lines.size() && lines[pos].rfind("scale", 0) == 0) {
        std::istringstream sline(next());
        if (!(sline >> kw >> scale) || (scale != 12 && scale != 1)) {
            throw ParseError("scale must be 12 or 1");
        }
    }

    std::vector<Rat> sizes;
    bool witness_follows = false;
    while (pos < lines.size()) {
        std::string line = next();
        if (line == "witness:") {
            witness_follows = true;
            break;
        }
        Rat s = parse_rational(line);
        if (s < 0 || s > Rat(scale)) {
            throw ParseError("size " + line + " outside [0," + std::to_string(scale) + "]");
        }
        if (s.den() > 1000000000) {
            throw ParseError("size " + line + ": denominator exceeds 10^9");
        }
        if (scale == 1) s *= Rat(12);
        sizes.push_back(s);
    }

    Instance inst(static_cast<int>(m), std::move(sizes));

    if (witness_follows) {
        Packing w;
        w.capacity = kOptCapacity;
        w.assignment.assign(inst.items.size(), -1);
        while (pos < lines.size()) {
            std::istringstream wline(next());
            std::string kw_item, arrow, kw_bin;
            long i = -1, b = -1;
            if (!(wline >> kw_item >> i >> arrow >> kw_bin >> b) || kw_item != "item" ||
                arrow != "->" || kw_bin != "bin") {
                throw ParseError("malformed witness line");
            }
            if (i < 0 || i >= static_cast<long>(inst.items.size()) || b < 0 || b >= m) {
                throw ParseError("witness indices out of range");
            }
            if (w.assignment[i] != -1) throw ParseError("witness assigns item twice");
            w.assignment[i] = static_cast<int>(b);
        }
        for (std::size_t i = 0; i < inst.items.size(); ++i) {
            if (w.assignment[i] == -1) {
                throw ParseError("witness misses item " + std::to_string(i));
            }
        }
        w.bin_loads.assign(m, Rat(0));
        for (std::size_t i = 0; i < inst.items.size(); ++i) {
            w.bin_loads[w.assignment[i]] += inst.items[i].size;
        }
        if (!verify_packing(inst.items, inst.m, w)) {
            throw ParseError("witness block is not a valid capacity-12 packing");
        }
        inst.witness = std::move(w);
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& instance) {
    out << "m " << instance.m << "\n";
    for (const Item& it : instance.items) out << format_rational(it.size) << "\n";
    if (instance.witness) {
        out << "witness:\n";
        for (std::size_t i = 0; i < instance.items.size(); ++i) {
            out << "item " << i << " -> bin " << instance.witness->assignment[i] << "\n";
        }
    }
}

void save_instance(const std::string& path, const Instance& instance) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    write_instance(out, instance);
    if (!out) throw ParseError("write to " + path + " failed");
}

namespace {

std::vector<ojson> trace_events(const Instance& instance, const RunResult& result,
                                const std::vector<ViolationAt>& violations) {
    std::vector<ojson> events;
    auto phase2_event = [&]() {
        ojson ev;
        ev["ev"] = "phase2";
        ev["branch"] = branch_name(*result.branch);
        ev["lambda"] = result.lambda ? *result.lambda : -1;
        ev["list"] = result.phase2_list;
        events.push_back(std::move(ev));
    };

    bool phase2_emitted = false;
    for (const Placement& p : result.placements) {
        if (!phase2_emitted && p.phase == 2 && result.branch) {
            phase2_event();
            phase2_emitted = true;
        }
        const Item& item = instance.items.at(p.item_index);
        ojson ev;
        ev["ev"] = "place";
        ev["i"] = p.item_index;
        ev["size"] = format_rational(item.size);
        ev["class"] = class_name(item.cls);
        ev["phase"] = p.phase;
        ev["rule"] = p.rule;
        ev["bin"] = p.bin_id;
        ev["load"] = format_rational(p.load_after);
        ev["bintype"] = p.phase == 0 ? "-" : type_name(p.bin_type_after);
        events.push_back(std::move(ev));
        for (const ViolationAt& v : violations) {
            if (v.item_index != p.item_index) continue;
            ojson ve;
            ve["ev"] = "violation";
            ve["clause"] = v.violation.clause;
            ve["bins"] = v.violation.bins;
            events.push_back(std::move(ve));
        }
    }
    if (!phase2_emitted && result.branch) phase2_event();
    if (result.failed_at) {
        ojson ev;
        ev["ev"] = "fail";
        ev["i"] = *result.failed_at;
        events.push_back(std::move(ev));
    }
    ojson done;
    done["ev"] = "done";
    done["max"] = format_rational(result.max_load);
    std::vector<std::string> loads;
    for (const Rat& l : result.final_loads) loads.push_back(format_rational(l));
    done["loads"] = loads;
    events.push_back(std::move(done));
    return events;
}

}  // namespace

std::string trace_lines(const Instance& instance, const RunResult& result,
                        const std::vector<ViolationAt>& violations) {
    std::string out;
    for (const ojson& ev : trace_events(instance, result, violations)) {
        out += ev.dump();
        out += "\n";
    }
    return out;
}

void write_trace(std::ostream& out, const Instance& instance, const RunResult& result,
                 const std::vector<ViolationAt>& violations) {
    out << trace_lines(instance, result, violations);
}

namespace {

bool rational_fields_equal(const ojson& a, const ojson& b) {
    return parse_rational(a.get<std::string>()) == parse_rational(b.get<std::string>());
}

std::string compare_events(const ojson& expected, const ojson& got, std::size_t index) {
    auto mismatch = [&](const std::string& what) {
        return "event " + std::to_string(index) + ": " + what + "\n  expected: " +
               expected.dump() + "\n  trace:    " + got.dump();
    };
    if (!got.is_object() || !expected.is_object()) return mismatch("not a record");
    for (auto it = expected.begin(); it != expected.end(); ++it) {
        const std::string& key = it.key();
        if (!got.contains(key)) return mismatch("missing field '" + key + "'");
        const ojson& g = got.at(key);
        if (key == "size" || key == "load" || key == "max") {
            if (!g.is_string() || !rational_fields_equal(it.value(), g)) {
                return mismatch("field '" + key + "' differs");
            }
        } else if (key == "loads") {
            if (!g.is_array() || g.size() != it.value().size()) {
                return mismatch("field 'loads' differs in length");
            }
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (!rational_fields_equal(it.value().at(i), g.at(i))) {
                    return mismatch("loads[" + std::to_string(i) + "] differs");
                }
            }
        } else if (it.value() != g) {
            return mismatch("field '" + key + "' differs");
        }
    }
    for (auto it = got.begin(); it != got.end(); ++it) {
        if (!expected.contains(it.key())) return mismatch("extra field '" + it.key() + "'");
    }
    return "";
}

}  // namespace

std::string trace_check(std::istream& trace, const Instance& instance) {
    std::vector<ojson> recorded;
    std::string line;
    std::size_t lineno = 0;
    Algorithm alg = Algorithm::Stretch15;
    bool alg_known = false;
    while (std::getline(trace, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        ojson ev = ojson::parse(line, nullptr, false);
        if (ev.is_discarded()) {
            throw ParseError("trace line " + std::to_string(lineno) + " is not valid JSON");
        }
        if (!ev.contains("ev")) {
            throw ParseError("trace line " + std::to_string(lineno) + " lacks 'ev'");
        }
        if (ev["ev"] == "violation") continue;  // replay produces no audit events
        if (!alg_known && ev["ev"] == "place") {
            alg = ev.value("phase", 1) == 0 ? Algorithm::FirstFit : Algorithm::Stretch15;
            alg_known = true;
        }
        recorded.push_back(std::move(ev));
    }

    RunResult replay = run(instance, alg);
    std::vector<ojson> expected = trace_events(instance, replay, {});
    if (expected.size() != recorded.size()) {
        return "trace has " + std::to_string(recorded.size()) + " events, replay produced " +
               std::to_string(expected.size());
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
        std::string err = compare_events(expected[i], recorded[i], i);
        if (!err.empty()) return err;
    }
    return "";
}

}  // namespace stretchpack
