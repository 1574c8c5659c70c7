// Command-line front end for the fretchet library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fretchet/adjoint.hpp"
#include "fretchet/diff.hpp"
#include "fretchet/errors.hpp"
#include "fretchet/nn.hpp"
#include "fretchet/oracle.hpp"
#include "fretchet/simplify.hpp"
#include "fretchet/syntax.hpp"

using namespace fretchet;
using json = nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_parse = 2;

double env_double(const char* name, double fallback) {
    const char* s = std::getenv(name);
    if (!s || !*s) return fallback;
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw Error(std::string("cannot read ") + name + "=" + s + " as a number");
    }
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string matrix_text(const Matrix& m, char sep) {
    std::ostringstream out;
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (c) out << sep;
            out << format_real(m(r, c));
        }
        out << '\n';
    }
    return out.str();
}

struct Options {
    bool json = false;
    std::string term;
    std::string at;
    std::string tangent;
    std::string cotangent;
    std::string domain;
    std::string format = "text";
    bool simplify_deriv = false;
    double h = 0.0;
    double tol = 0.0;
    std::size_t m = 7;
    std::size_t n = 5;
    std::uint64_t seed = 7;
    std::string dims;
    double lr = 0.1;
    std::size_t steps = 200;
    std::uint64_t nn_seed = 42;
    std::string data;
    std::string out;
};

class Runner {
public:
    explicit Runner(const Options& o) : o_(o) {}

    int eval() {
        FunTerm t = parse_fun(o_.term);
        Vector v = parse_vec(o_.at);
        Vector y = eval_fun(t, v);
        doc_["inputs"] = {{"term", o_.term}, {"at", o_.at}};
        doc_["value"] = to_string(y);
        return emit(to_string(y) + "\n");
    }

    int diff() {
        FunTerm t = parse_fun(o_.term);
        Vector v = parse_vec(o_.at);
        auto r = affine(t, v);
        LinTerm d = o_.simplify_deriv ? simplify(r.deriv) : r.deriv;
        Matrix m = lower_matrix(d, v.space());
        doc_["inputs"] = {{"term", o_.term}, {"at", o_.at}, {"simplify", o_.simplify_deriv}};
        doc_["value"] = to_string(r.value);
        doc_["term"] = to_string(d);
        doc_["matrix"] = matrix_json(m);
        return emit("value: " + to_string(r.value) + "\nderivative: " + to_string(d) + "\nmatrix:\n" +
                    matrix_text(m, ' '));
    }

    int grad() {
        FunTerm t = parse_fun(o_.term);
        Vector v = parse_vec(o_.at);
        Vector g = gradient(t, v);
        doc_["inputs"] = {{"term", o_.term}, {"at", o_.at}};
        doc_["value"] = to_string(g);
        return emit(to_string(g) + "\n");
    }

    int jvp_cmd() {
        FunTerm t = parse_fun(o_.term);
        Vector v = parse_vec(o_.at), dv = parse_vec(o_.tangent);
        Vector y = jvp(t, v, dv);
        doc_["inputs"] = {{"term", o_.term}, {"at", o_.at}, {"tangent", o_.tangent}};
        doc_["value"] = to_string(y);
        return emit(to_string(y) + "\n");
    }

    int vjp_cmd() {
        FunTerm t = parse_fun(o_.term);
        Vector v = parse_vec(o_.at), dy = parse_vec(o_.cotangent);
        Vector x = vjp(t, v, dy);
        doc_["inputs"] = {{"term", o_.term}, {"at", o_.at}, {"cotangent", o_.cotangent}};
        doc_["value"] = to_string(x);
        return emit(to_string(x) + "\n");
    }

    int adjoint_cmd() {
        LinTerm f = lin_with_domain();
        LinTerm a = adjoint(f);
        doc_["inputs"] = lin_inputs();
        doc_["term"] = to_string(a);
        return emit(to_string(a) + "\n");
    }

    int simplify_cmd() {
        LinTerm f = lin_with_domain();
        SimplifyStats st;
        LinTerm s = simplify(f, &st);
        doc_["inputs"] = lin_inputs();
        doc_["term"] = to_string(s);
        doc_["report"] = {{"size_before", term_size(f)},
                          {"size_after", term_size(s)},
                          {"steps", st.steps},
                          {"budget", st.budget},
                          {"budget_exhausted", st.budget_exhausted}};
        std::string text = "before (size " + std::to_string(term_size(f)) + "): " + to_string(f) + "\n";
        text += "after  (size " + std::to_string(term_size(s)) + "): " + to_string(s) + "\n";
        return emit(text);
    }

    int lower() {
        LinTerm f = lin_with_domain();
        Matrix m = lower_matrix(f);
        doc_["inputs"] = lin_inputs();
        doc_["matrix"] = matrix_json(m);
        if (o_.format != "text" && o_.format != "csv") throw CLI::ValidationError("--format", "text or csv");
        return emit(matrix_text(m, o_.format == "csv" ? ',' : ' '));
    }

    int check() {
        FunTerm t = parse_fun(o_.term);
        Vector v = parse_vec(o_.at);
        const double h = o_.h > 0 ? o_.h : env_double("FRETCHET_FD_H", 1e-4);
        const double tol = o_.tol > 0 ? o_.tol : env_double("FRETCHET_TOL", 1e-5);
        Matrix sym = lower_matrix(affine(t, v).deriv, v.space());
        Matrix fd = fd_jacobian(t, v, h);
        double worst = 0.0;
        for (std::size_t i = 0; i < sym.entries.size(); ++i)
            worst = std::max(worst, std::abs(sym.entries[i] - fd.entries[i]) / (1.0 + std::abs(fd.entries[i])));
        const bool ok = approx_equal_rel(sym, fd, tol);
        doc_["inputs"] = {{"term", o_.term}, {"at", o_.at}};
        doc_["matrix"] = matrix_json(sym);
        doc_["report"] = {{"h", h}, {"tol", tol}, {"max_rel_error", worst}, {"passed", ok},
                          {"fd_matrix", matrix_json(fd)}};
        std::ostringstream text;
        text << "symbolic:\n" << matrix_text(sym, ' ') << "finite differences (h=" << format_real(h) << "):\n"
             << matrix_text(fd, ' ') << "max relative error " << format_real(worst) << " (tol "
             << format_real(tol) << "): " << (ok ? "PASS" : "FAIL") << "\n";
        emit(text.str());
        return ok ? exit_ok : exit_error;
    }

    int cost_griewank() {
        Griewank g = make_griewank(o_.m, o_.n, o_.seed);
        GriewankCounts c = count_griewank(g);
        doc_["inputs"] = {{"model", "griewank"}, {"m", o_.m}, {"n", o_.n}, {"seed", o_.seed}};
        doc_["report"] = {{"dense_apply", c.dense_apply},
                          {"decomposed_apply", c.decomposed_apply},
                          {"build", c.build},
                          {"term_size", c.term_size}};
        std::ostringstream text;
        text << "dense_apply: " << c.dense_apply << "\ndecomposed_apply: " << c.decomposed_apply
             << "\nbuild: " << c.build << "\nterm_size: " << c.term_size << "\n";
        return emit(text.str());
    }

    int nn_train() {
        NetworkSpec spec;
        std::stringstream ss(o_.dims);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                spec.dims.push_back(std::stoul(cell));
            } catch (const std::exception&) {
                throw CLI::ValidationError("--dims", "comma-separated positive integers");
            }
        }
        if (spec.dims.size() < 2) throw CLI::ValidationError("--dims", "at least two widths");
        auto data = load_csv(o_.data, spec.dims.front(), spec.dims.back());
        TrainResult r = train(spec, data, o_.lr, o_.steps, o_.nn_seed);
        std::ostringstream csv;
        csv << "step,loss\n";
        for (std::size_t i = 0; i < r.loss_trace.size(); ++i) csv << i << ',' << format_real(r.loss_trace[i]) << '\n';
        if (!o_.out.empty()) {
            std::ofstream f(o_.out);
            if (!f) throw Error("cannot write " + o_.out);
            f << csv.str();
        }
        doc_["inputs"] = {{"dims", spec.dims}, {"lr", o_.lr}, {"steps", o_.steps}, {"seed", o_.nn_seed},
                          {"data", o_.data}};
        doc_["report"] = {{"initial_loss", r.loss_trace.front()},
                          {"final_loss", r.loss_trace.back()},
                          {"loss_trace", r.loss_trace}};
        return emit(o_.out.empty() ? csv.str()
                                   : "initial loss " + format_real(r.loss_trace.front()) + ", final loss " +
                                         format_real(r.loss_trace.back()) + "\n");
    }

    void set_command(const std::string& name) { doc_["command"] = name; }

private:
    LinTerm lin_with_domain() {
        LinTerm f = parse_lin(o_.term);
        if (!o_.domain.empty()) return elaborate(f, parse_space(o_.domain));
        return f;
    }

    json lin_inputs() const {
        json in = {{"term", o_.term}};
        if (!o_.domain.empty()) in["domain"] = o_.domain;
        return in;
    }

    int emit(const std::string& text) {
        if (o_.json) std::cout << doc_.dump(2) << '\n';
        else std::cout << text;
        return exit_ok;
    }

    const Options& o_;
    json doc_ = json::object();
};

void add_json(CLI::App* cmd, Options& o) { cmd->add_flag("--json", o.json, "machine-readable output"); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic differentiation of combinatory function terms"};
    app.require_subcommand(1);
    Options o;
    add_json(&app, o);

    auto fun_cmd = [&](const std::string& name, const std::string& help) {
        auto* c = app.add_subcommand(name, help);
        add_json(c, o);
        c->add_option("--at", o.at, "point, in vector syntax")->required();
        c->add_option("term", o.term, "function term")->required();
        return c;
    };
    auto lin_cmd = [&](const std::string& name, const std::string& help) {
        auto* c = app.add_subcommand(name, help);
        add_json(c, o);
        c->add_option("--domain", o.domain, "domain space, to fill unannotated holes");
        c->add_option("term", o.term, "linear term")->required();
        return c;
    };

    auto* eval = fun_cmd("eval", "evaluate a function term");
    auto* diff = fun_cmd("diff", "value and derivative term");
    diff->add_flag("--simplify", o.simplify_deriv, "simplify the derivative term");
    auto* grad = fun_cmd("grad", "gradient of a real-valued term");
    auto* jvp_c = fun_cmd("jvp", "Jacobian-vector product");
    jvp_c->add_option("--tangent", o.tangent)->required();
    auto* vjp_c = fun_cmd("vjp", "vector-Jacobian product");
    vjp_c->add_option("--cotangent", o.cotangent)->required();
    auto* check = fun_cmd("check", "compare the derivative with central differences");
    check->add_option("--fd-h", o.h, "finite-difference step (default FRETCHET_FD_H or 1e-4)");
    check->add_option("--tol", o.tol, "relative tolerance (default FRETCHET_TOL or 1e-5)");

    auto* adj = lin_cmd("adjoint", "adjoint of a linear term");
    auto* simp = lin_cmd("simplify", "rewrite a linear term");
    auto* lower = lin_cmd("lower", "dense matrix of a linear term");
    lower->add_option("--format", o.format, "text or csv");

    auto* cost = app.add_subcommand("cost", "multiplication counts");
    auto* griewank = cost->add_subcommand("griewank", "b sin(a . x) at a random point");
    cost->require_subcommand(1);
    add_json(cost, o);
    add_json(griewank, o);
    griewank->add_option("--m", o.m, "output dimension");
    griewank->add_option("--n", o.n, "input dimension");
    griewank->add_option("--seed", o.seed);

    auto* nn = app.add_subcommand("nn", "neural network demo");
    auto* train_c = nn->add_subcommand("train", "full-batch gradient descent; prints the loss trace as CSV");
    nn->require_subcommand(1);
    add_json(nn, o);
    add_json(train_c, o);
    train_c->add_option("--dims", o.dims, "layer widths, e.g. 2,4,1")->required();
    train_c->add_option("--lr", o.lr);
    train_c->add_option("--steps", o.steps);
    train_c->add_option("--seed", o.nn_seed);
    train_c->add_option("--data", o.data, "CSV file")->required();
    train_c->add_option("--out", o.out, "write the loss trace here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_parse;
    }

    Runner run(o);
    try {
        if (eval->parsed()) return run.set_command("eval"), run.eval();
        if (diff->parsed()) return run.set_command("diff"), run.diff();
        if (grad->parsed()) return run.set_command("grad"), run.grad();
        if (jvp_c->parsed()) return run.set_command("jvp"), run.jvp_cmd();
        if (vjp_c->parsed()) return run.set_command("vjp"), run.vjp_cmd();
        if (check->parsed()) return run.set_command("check"), run.check();
        if (adj->parsed()) return run.set_command("adjoint"), run.adjoint_cmd();
        if (simp->parsed()) return run.set_command("simplify"), run.simplify_cmd();
        if (lower->parsed()) return run.set_command("lower"), run.lower();
        if (griewank->parsed()) return run.set_command("cost griewank"), run.cost_griewank();
        if (train_c->parsed()) return run.set_command("nn train"), run.nn_train();
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return exit_parse;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return exit_parse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}
