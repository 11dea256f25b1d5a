// Batch front door for the qtwistor kernel.  Every computation goes through
// the C API; this file only handles files, flags and exit codes.
//
// Exit codes: 0 = property holds / success, 1 = property fails, 2 = input or
// usage error (malformed JSON emits a diagnostic object on stderr).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtwistor/qtwistor.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_or_die(const std::string& text, const std::string& origin) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw InputError("malformed JSON in " + origin);
    return j;
}

void emit(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw InputError("cannot open output file '" + out_path + "'");
    out << text;
}

std::string take_string(char* s) {
    std::string out = s ? s : "";
    qtw_string_free(s);
    return out;
}

struct RealmapHandle {
    qtw_realmap* p = nullptr;
    ~RealmapHandle() { qtw_realmap_destroy(p); }
};

struct HmatrixHandle {
    qtw_hmatrix* p = nullptr;
    ~HmatrixHandle() { qtw_hmatrix_destroy(p); }
};

qtw_realmap* load_realmap(const json& j) {
    qtw_realmap* t = nullptr;
    const qtw_status s = qtw_realmap_from_json(j.dump().c_str(), &t);
    if (s != QTW_OK)
        throw InputError(std::string("bad real map: ") + qtw_status_name(s));
    return t;
}

qtw_hmatrix* load_hmatrix(const json& j) {
    qtw_hmatrix* a = nullptr;
    const qtw_status s = qtw_hmatrix_from_json(j.dump().c_str(), &a);
    if (s != QTW_OK)
        throw InputError(std::string("bad quaternion matrix: ") + qtw_status_name(s));
    return a;
}

json hmatrix_json(const qtw_hmatrix* a) {
    char* text = nullptr;
    qtw_hmatrix_to_json(a, &text);
    return json::parse(take_string(text));
}

json realmap_json(const qtw_realmap* t) {
    char* text = nullptr;
    qtw_realmap_to_json(t, &text);
    return json::parse(take_string(text));
}

std::vector<double> point_coords(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty())
        throw InputError(what + " must be an array of quaternions");
    std::vector<double> coords;
    for (const json& q : j) {
        if (!q.is_array() || q.size() != 4)
            throw InputError(what + " entries must be [w,x,y,z] arrays");
        for (const json& c : q)
            coords.push_back(c.get<double>());
    }
    return coords;
}

struct Options {
    std::string input;
    std::string out;
    double tol = 1e-9;
    double step = 1e-4;
    uint64_t seed = 0;
    int trials = 256;
};

int cmd_check_hlinear(const Options& opt) {
    const json in = parse_or_die(read_file(opt.input), opt.input);
    RealmapHandle t{load_realmap(in)};
    int linear = 0;
    double defect = 0;
    qtw_check_hlinear(t.p, opt.tol, &linear, &defect);
    emit(json{{"hlinear", linear == 1}, {"defect", defect}, {"tol", opt.tol}},
         opt.out);
    return linear ? kExitOk : kExitFail;
}

int cmd_check_quaternionic(const Options& opt) {
    const json in = parse_or_die(read_file(opt.input), opt.input);
    RealmapHandle t{load_realmap(in)};
    double rot[9];
    double residual = 0;
    const qtw_status s = qtw_check_quaternionic(t.p, opt.tol, rot, &residual);
    json out{{"residual", residual}, {"tol", opt.tol}};
    if (s == QTW_OK) {
        out["quaternionic"] = true;
        out["T"] = std::vector<double>(rot, rot + 9);
        emit(out, opt.out);
        return kExitOk;
    }
    out["quaternionic"] = false;
    out["reason"] = qtw_status_name(s);
    emit(out, opt.out);
    return kExitFail;
}

int cmd_decompose(const Options& opt) {
    const json in = parse_or_die(read_file(opt.input), opt.input);
    RealmapHandle t{load_realmap(in)};
    double a[4], rot[9], residual = 0;
    HmatrixHandle A;
    const qtw_status s = qtw_decompose(t.p, opt.tol, a, &A.p, rot, &residual);
    if (s != QTW_OK) {
        emit(json{{"error", qtw_status_name(s)}}, opt.out);
        return kExitFail;
    }
    emit(json{{"a", std::vector<double>(a, a + 4)},
              {"A", hmatrix_json(A.p)},
              {"T", std::vector<double>(rot, rot + 9)},
              {"residual", residual}},
         opt.out);
    return kExitOk;
}

int cmd_fueter_split(const Options& opt) {
    const json in = parse_or_die(read_file(opt.input), opt.input);
    if (!in.is_object() || !in.contains("map"))
        throw InputError("fueter-split input needs a \"map\" object");
    RealmapHandle t{load_realmap(in["map"])};

    double rot[9];
    if (in.contains("T")) {
        const json& jt = in["T"];
        if (!jt.is_array() || jt.size() != 9)
            throw InputError("\"T\" must be a 9-element array");
        for (int i = 0; i < 9; ++i)
            rot[i] = jt[static_cast<size_t>(i)].get<double>();
    } else {
        double residual = 0;
        const qtw_status s = qtw_check_quaternionic(t.p, opt.tol, rot, &residual);
        if (s != QTW_OK) {
            emit(json{{"error", qtw_status_name(s)},
                      {"detail", "no \"T\" given and the map determines none"}},
                 opt.out);
            return kExitFail;
        }
    }

    RealmapHandle qpart, fpart;
    const qtw_status s = qtw_fueter_split(t.p, rot, &qpart.p, &fpart.p);
    if (s != QTW_OK) {
        emit(json{{"error", qtw_status_name(s)}}, opt.out);
        return kExitFail;
    }
    int qf = 0, ff = 0;
    double qd = 0, fd = 0;
    qtw_is_fueter(qpart.p, rot, opt.tol, &qf, &qd);
    qtw_is_fueter(fpart.p, rot, opt.tol, &ff, &fd);
    emit(json{{"T", std::vector<double>(rot, rot + 9)},
              {"q_part", realmap_json(qpart.p)},
              {"f_part", realmap_json(fpart.p)},
              {"f_part_is_fueter", ff == 1}},
         opt.out);
    return kExitOk;
}

int cmd_fueter_suite(const Options& opt, int m, int n) {
    char* report = nullptr;
    const qtw_status s =
        qtw_fueter_suite(m, n, nullptr, opt.trials, opt.seed, &report);
    if (s != QTW_OK)
        throw InputError(std::string("suite failed: ") + qtw_status_name(s));
    const json j = json::parse(take_string(report));
    emit(j, opt.out);
    return j.at("ok").get<bool>() ? kExitOk : kExitFail;
}

int cmd_projective_eval(const Options& opt) {
    const json in = parse_or_die(read_file(opt.input), opt.input);
    if (!in.is_object() || !in.contains("A") || !in.contains("points"))
        throw InputError("projective-eval input needs \"A\" and \"points\"");
    HmatrixHandle A{load_hmatrix(in["A"])};
    const int n1 = qtw_hmatrix_cols(A.p);
    json images = json::array();
    for (const json& pt : in["points"]) {
        const std::vector<double> x = point_coords(pt, "point");
        if (static_cast<int>(x.size()) != 4 * qtw_hmatrix_rows(A.p))
            throw InputError("point dimension disagrees with A");
        std::vector<double> y(static_cast<size_t>(4 * n1));
        const qtw_status s = qtw_projective_apply(A.p, x.data(), y.data());
        if (s != QTW_OK) {
            images.push_back(json{{"error", qtw_status_name(s)}});
            continue;
        }
        json rep = json::array();
        for (int q = 0; q < n1; ++q)
            rep.push_back(json::array(
                {y[4 * q + 0], y[4 * q + 1], y[4 * q + 2], y[4 * q + 3]}));
        images.push_back(json{{"y", rep}});
    }
    emit(json{{"images", images}}, opt.out);
    return kExitOk;
}

int cmd_projective_recover(const Options& opt, double recover_tol) {
    const json in = parse_or_die(read_file(opt.input), opt.input);
    if (!in.is_array() || in.empty())
        throw InputError("samples file must be a nonempty array");
    const size_t m1 = point_coords(in[0]["x"], "x").size() / 4;
    const size_t n1 = point_coords(in[0]["y"], "y").size() / 4;
    std::vector<double> xs, ys;
    for (const json& item : in) {
        if (!item.is_object() || !item.contains("x") || !item.contains("y"))
            throw InputError("each sample needs x and y");
        const std::vector<double> x = point_coords(item["x"], "x");
        const std::vector<double> y = point_coords(item["y"], "y");
        if (x.size() != 4 * m1 || y.size() != 4 * n1)
            throw InputError("inconsistent sample dimensions");
        xs.insert(xs.end(), x.begin(), x.end());
        ys.insert(ys.end(), y.begin(), y.end());
    }
    const int m = static_cast<int>(m1) - 1, n = static_cast<int>(n1) - 1;
    HmatrixHandle A;
    double residual = 0, sigma2 = 0;
    const qtw_status s =
        qtw_projective_recover(m, n, static_cast<int>(in.size()), xs.data(),
                               ys.data(), recover_tol, &A.p, &residual, &sigma2);
    if (s == QTW_ERR_INVALID_ARGUMENT || s == QTW_ERR_INSUFFICIENT_SAMPLES)
        throw InputError(std::string("recovery rejected the input: ") +
                         qtw_status_name(s));
    if (s != QTW_OK) {
        emit(json{{"error", qtw_status_name(s)},
                  {"residual", residual},
                  {"second_singular_value", sigma2}},
             opt.out);
        return kExitFail;
    }
    emit(json{{"A", hmatrix_json(A.p)},
              {"residual", residual},
              {"second_singular_value", sigma2}},
         opt.out);
    return kExitOk;
}

int cmd_lines_check(const Options& opt) {
    const json in = parse_or_die(read_file(opt.input), opt.input);
    for (const char* key : {"rows", "cols", "re", "im"})
        if (!in.is_object() || !in.contains(key))
            throw InputError("lines-check input needs rows, cols, re, im");
    const int rows = in["rows"].get<int>();
    const int cols = in["cols"].get<int>();
    const std::vector<double> re = in["re"].get<std::vector<double>>();
    const std::vector<double> im = in["im"].get<std::vector<double>>();
    if (static_cast<int>(re.size()) != rows * cols ||
        static_cast<int>(im.size()) != rows * cols)
        throw InputError("re/im must hold rows*cols doubles");
    int maps_lines = 0, cross = 0, failures = 0;
    const qtw_status s =
        qtw_lines_check(rows, cols, re.data(), im.data(), opt.trials,
                        std::max(opt.tol, 1e-8), opt.seed, &maps_lines, &cross,
                        &failures);
    if (s == QTW_ERR_RANK_TOO_LOW) {
        emit(json{{"error", "RankTooLow"}}, opt.out);
        return kExitFail;
    }
    if (s != QTW_OK)
        throw InputError(std::string("lines check failed: ") + qtw_status_name(s));
    emit(json{{"maps_lines", maps_lines == 1},
              {"cross_check", cross == 1},
              {"trials", opt.trials},
              {"failures", failures}},
         opt.out);
    return maps_lines ? kExitOk : kExitFail;
}

int cmd_twistor_check(const Options& opt, const std::string& map_name, int m, int n,
                      int points, double check_tol) {
    int verdict = 0;
    char* report = nullptr;
    const qtw_status s = qtw_twistor_check(map_name.c_str(), m, n, points, opt.step,
                                           check_tol, opt.seed, &verdict, &report);
    if (s == QTW_ERR_INVALID_ARGUMENT)
        throw InputError("unknown map '" + map_name + "'");
    if (s != QTW_OK)
        throw InputError(std::string("twistor check failed: ") + qtw_status_name(s));
    emit(json::parse(take_string(report)), opt.out);
    return verdict ? kExitOk : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qtwistor — quaternionic linear algebra verification kernel"};
    app.set_help_flag("--help", "print help"); // keep --h free for the FD step
    app.require_subcommand(1);

    Options opt;
    int m = 1, n = 1, points = 100;
    double recover_tol = 1e-8;
    double check_tol = 1e-4;
    std::string map_name = "affine";

    auto add_common = [&](CLI::App* sub, bool with_input) {
        sub->set_help_flag("--help", "print help");
        if (with_input)
            sub->add_option("input", opt.input, "input JSON file")->required();
        sub->add_option("--out", opt.out, "output path (default stdout)");
        sub->add_option("--tol", opt.tol, "comparison tolerance");
        sub->add_option("--seed", opt.seed, "RNG seed (default 0)");
        sub->add_option("--trials", opt.trials, "randomized trial count");
        sub->add_option("--h", opt.step, "finite-difference step");
    };

    CLI::App* c_hlin = app.add_subcommand("check-hlinear",
                                          "decide H-linearity of a real map");
    add_common(c_hlin, true);
    CLI::App* c_quat = app.add_subcommand(
        "check-quaternionic", "decide quaternionic linearity and recover T");
    add_common(c_quat, true);
    CLI::App* c_dec = app.add_subcommand("decompose",
                                         "split a quaternionic map as t(X) = a X A");
    add_common(c_dec, true);
    CLI::App* c_fsp = app.add_subcommand("fueter-split",
                                         "spectral split of a map under C_T");
    add_common(c_fsp, true);
    CLI::App* c_fsu = app.add_subcommand("fueter-suite",
                                         "randomized verification of the C_T algebra");
    add_common(c_fsu, false);
    c_fsu->add_option("--m", m, "source quaternion dimension");
    c_fsu->add_option("--n", n, "target quaternion dimension");
    CLI::App* c_pev = app.add_subcommand("projective-eval",
                                         "evaluate [X] -> [X A] on points of HP^m");
    add_common(c_pev, true);
    CLI::App* c_rec = app.add_subcommand("projective-recover",
                                         "recover A from projective samples");
    add_common(c_rec, true);
    c_rec->add_option("--recover-tol", recover_tol, "sample consistency tolerance");
    CLI::App* c_lin = app.add_subcommand("lines-check",
                                         "quaternionic-line containment check");
    add_common(c_lin, true);
    CLI::App* c_twi = app.add_subcommand("twistor-check",
                                         "grid twistoriality report for a built-in map");
    add_common(c_twi, false);
    c_twi->add_option("--map", map_name, "affine | inversion | conj-control | quadratic-control");
    c_twi->add_option("--m", m, "source quaternion dimension");
    c_twi->add_option("--n", n, "target quaternion dimension");
    c_twi->add_option("--points", points, "grid size");
    c_twi->add_option("--check-tol", check_tol, "twistoriality verdict threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (c_hlin->parsed())
            return cmd_check_hlinear(opt);
        if (c_quat->parsed())
            return cmd_check_quaternionic(opt);
        if (c_dec->parsed())
            return cmd_decompose(opt);
        if (c_fsp->parsed())
            return cmd_fueter_split(opt);
        if (c_fsu->parsed())
            return cmd_fueter_suite(opt, m, n);
        if (c_pev->parsed())
            return cmd_projective_eval(opt);
        if (c_rec->parsed())
            return cmd_projective_recover(opt, recover_tol);
        if (c_lin->parsed())
            return cmd_lines_check(opt);
        if (c_twi->parsed())
            return cmd_twistor_check(opt, map_name, m, n, points, check_tol);
    } catch (const InputError& e) {
        std::cerr << json{{"error", "InputError"}, {"detail", e.what()}}.dump()
                  << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "Internal"}, {"detail", e.what()}}.dump() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
