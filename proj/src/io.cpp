#include "vnesim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vnesim {

namespace {

constexpr const char* kSubstrateMagic = "vnesim-substrate-v1";
constexpr const char* kRequestsMagic = "vnesim-requests-v1";
constexpr const char* kModelMagic = "vnesim-model-v1";

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path.string());
    return in;
}

void expect_magic(std::istream& in, const char* magic,
                  const std::filesystem::path& path) {
    std::string line;
    std::getline(in, line);
    if (line != magic)
        throw std::runtime_error(path.string() + ": unrecognized format header '" +
                                 line + "' (expected " + magic + ")");
}

void expect_token(std::istream& in, const char* token,
                  const std::filesystem::path& path) {
    std::string tok;
    if (!(in >> tok) || tok != token)
        throw std::runtime_error(path.string() + ": malformed file, expected '" +
                                 token + "'");
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

Algorithm parse_algorithm(const std::string& name) {
    if (name == "css-rl")
        return Algorithm::css_rl;
    if (name == "greedy")
        return Algorithm::greedy;
    if (name == "topsis-ta")
        return Algorithm::topsis_ta;
    if (name == "topsis-nta")
        return Algorithm::topsis_nta;
    throw std::invalid_argument("unknown algorithm '" + name +
                                "' (expected css-rl, greedy, topsis-ta or topsis-nta)");
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::css_rl:
        return "css-rl";
    case Algorithm::greedy:
        return "greedy";
    case Algorithm::topsis_ta:
        return "topsis-ta";
    case Algorithm::topsis_nta:
        return "topsis-nta";
    }
    return "?";
}

void RunConfig::validate() const {
    scenario.validate();
    if (epochs < 0)
        throw std::invalid_argument("epochs: must be >= 0");
    if (batch_size < 1)
        throw std::invalid_argument("batch_size: must be >= 1");
    if (learning_rate <= 0.0)
        throw std::invalid_argument("learning_rate: must be > 0");
    if (ksp_k < 1)
        throw std::invalid_argument("ksp_k: must be >= 1");
    if (seeds.empty())
        throw std::invalid_argument("seeds: must list at least one seed");
}

RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        std::istringstream vs(value);
        auto bad_value = [&]() {
            return std::invalid_argument("config: " + key + ": bad value '" +
                                         value + "'");
        };
        auto read_value = [&](auto& target) {
            if (!(vs >> target) || !(vs >> std::ws).eof())
                throw bad_value();
        };
        auto read_range = [&](Range& target) {
            if (!(vs >> target.lo >> target.hi) || !(vs >> std::ws).eof())
                throw bad_value();
        };

        ScenarioConfig& sc = cfg.scenario;
        if (key == "substrate_nodes")
            read_value(sc.substrate_nodes);
        else if (key == "link_model") {
            if (value == "waxman")
                sc.link_model = LinkModel::waxman;
            else if (value == "uniform-probability")
                sc.link_model = LinkModel::uniform_probability;
            else
                throw bad_value();
        } else if (key == "waxman_alpha")
            read_value(sc.waxman_alpha);
        else if (key == "waxman_beta")
            read_value(sc.waxman_beta);
        else if (key == "link_probability")
            read_value(sc.link_probability);
        else if (key == "cpu_range")
            read_range(sc.cpu_range);
        else if (key == "sto_range")
            read_range(sc.sto_range);
        else if (key == "bw_range")
            read_range(sc.bw_range);
        else if (key == "sl_range")
            read_range(sc.sl_range);
        else if (key == "vnr_count")
            read_value(sc.vnr_count);
        else if (key == "vnr_nodes_range")
            read_range(sc.vnr_nodes_range);
        else if (key == "vnr_cpu_range")
            read_range(sc.vnr_cpu_range);
        else if (key == "vnr_sto_range")
            read_range(sc.vnr_sto_range);
        else if (key == "vnr_bw_range")
            read_range(sc.vnr_bw_range);
        else if (key == "sr_range")
            read_range(sc.sr_range);
        else if (key == "arrival_rate")
            read_value(sc.arrival_rate);
        else if (key == "mean_lifetime")
            read_value(sc.mean_lifetime);
        else if (key == "train_fraction")
            read_value(sc.train_fraction);
        else if (key == "seed")
            read_value(sc.seed);
        else if (key == "algorithm")
            cfg.algorithm = parse_algorithm(value);
        else if (key == "epochs")
            read_value(cfg.epochs);
        else if (key == "batch_size")
            read_value(cfg.batch_size);
        else if (key == "learning_rate")
            read_value(cfg.learning_rate);
        else if (key == "ksp_k")
            read_value(cfg.ksp_k);
        else if (key == "seeds") {
            cfg.seeds.clear();
            std::uint64_t s;
            while (vs >> s)
                cfg.seeds.push_back(s);
            if (cfg.seeds.empty() || !(vs >> std::ws).eof())
                throw bad_value();
        } else
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

void save_model(const ModelArtifact& model, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << kModelMagic << "\n";
    out << "kernel";
    for (double w : model.params.kernel)
        out << " " << fmt_double(w);
    out << "\n";
    out << "bias " << fmt_double(model.params.bias) << "\n";
    out << "learning_rate " << fmt_double(model.params.learning_rate) << "\n";
    out << "batch_size " << model.params.batch_size << "\n";
    out << "seed " << model.seed << "\n";
    out << "epochs " << model.epochs << "\n";
    out << "batch_updates " << model.batch_updates << "\n";
    if (!out)
        throw std::runtime_error("save_model: write failed for " + path.string());
}

ModelArtifact load_model(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    expect_magic(in, kModelMagic, path);
    ModelArtifact model;
    expect_token(in, "kernel", path);
    for (double& w : model.params.kernel)
        in >> w;
    expect_token(in, "bias", path);
    in >> model.params.bias;
    expect_token(in, "learning_rate", path);
    in >> model.params.learning_rate;
    expect_token(in, "batch_size", path);
    in >> model.params.batch_size;
    expect_token(in, "seed", path);
    in >> model.seed;
    expect_token(in, "epochs", path);
    in >> model.epochs;
    expect_token(in, "batch_updates", path);
    in >> model.batch_updates;
    if (!in)
        throw std::runtime_error("load_model: malformed file " + path.string());
    return model;
}

void save_substrate(const SubstrateNetwork& net, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << kSubstrateMagic << "\n";
    out << "nodes " << net.node_count() << "\n";
    for (const SubstrateNode& n : net.nodes)
        out << n.id << " " << n.cpu_capacity << " " << n.sto_capacity << " "
            << n.security_level << "\n";
    out << "links " << net.link_count() << "\n";
    for (const SubstrateLink& l : net.links)
        out << l.a << " " << l.b << " " << l.bw_capacity << "\n";
    if (!out)
        throw std::runtime_error("save_substrate: write failed for " + path.string());
}

SubstrateNetwork load_substrate(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    expect_magic(in, kSubstrateMagic, path);
    SubstrateNetwork net;
    expect_token(in, "nodes", path);
    int n = 0;
    in >> n;
    for (int i = 0; i < n; ++i) {
        int id, sl;
        Resource cpu, sto;
        if (!(in >> id >> cpu >> sto >> sl) || id != i)
            throw std::runtime_error("load_substrate: malformed node section in " +
                                     path.string());
        net.add_node(cpu, sto, sl);
    }
    expect_token(in, "links", path);
    int m = 0;
    in >> m;
    for (int i = 0; i < m; ++i) {
        int a, b;
        Resource bw;
        if (!(in >> a >> b >> bw))
            throw std::runtime_error("load_substrate: malformed link section in " +
                                     path.string());
        net.add_link(a, b, bw);
    }
    return net;
}

void save_requests(const EventStream& stream, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << kRequestsMagic << "\n";
    out << "requests " << stream.requests.size() << "\n";
    for (const VirtualRequest& r : stream.requests) {
        out << "request " << r.request_id << " " << fmt_double(r.arrival_time)
            << " " << fmt_double(r.lifetime) << " " << r.nodes.size() << " "
            << r.links.size() << "\n";
        for (const VirtualNode& n : r.nodes)
            out << "node " << n.id << " " << n.cpu_demand << " " << n.sto_demand
                << " " << n.security_requirement << "\n";
        for (const VirtualLink& l : r.links)
            out << "link " << l.from << " " << l.to << " " << l.bw_demand << "\n";
    }
    if (!out)
        throw std::runtime_error("save_requests: write failed for " + path.string());
}

EventStream load_requests(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    expect_magic(in, kRequestsMagic, path);
    EventStream stream;
    expect_token(in, "requests", path);
    std::size_t count = 0;
    in >> count;
    stream.requests.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        expect_token(in, "request", path);
        VirtualRequest r;
        std::size_t nodes = 0, links = 0;
        if (!(in >> r.request_id >> r.arrival_time >> r.lifetime >> nodes >> links))
            throw std::runtime_error("load_requests: malformed request header in " +
                                     path.string());
        for (std::size_t v = 0; v < nodes; ++v) {
            expect_token(in, "node", path);
            VirtualNode n;
            in >> n.id >> n.cpu_demand >> n.sto_demand >> n.security_requirement;
            r.nodes.push_back(n);
        }
        for (std::size_t l = 0; l < links; ++l) {
            expect_token(in, "link", path);
            VirtualLink vl;
            in >> vl.from >> vl.to >> vl.bw_demand;
            r.links.push_back(vl);
        }
        stream.requests.push_back(std::move(r));
    }
    if (!in)
        throw std::runtime_error("load_requests: malformed file " + path.string());
    stream.rebuild_events();
    return stream;
}

void save_training_csv(const std::vector<TrainingRecord>& curve,
                       const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "epoch,window,window_arrivals,window_accepted,mean_reward,window_acc,"
           "window_revenue,window_cost,window_rc\n";
    char line[256];
    for (const TrainingRecord& r : curve) {
        std::snprintf(line, sizeof(line), "%d,%d,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                      r.epoch, r.window_index, r.window_arrivals,
                      r.window_accepted, r.mean_reward, r.window_acc,
                      r.window_revenue, r.window_cost, r.window_rc);
        out << line;
    }
    if (!out)
        throw std::runtime_error("save_training_csv: write failed for " +
                                 path.string());
}

} // namespace vnesim
