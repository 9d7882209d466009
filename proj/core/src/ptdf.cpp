#include <algorithm>
#include <queue>
#include <vector>

#include "scenuc/grid.hpp"

namespace scenuc {

int GridCase::bus_index(int bus_id) const {
  for (int i = 0; i < n_bus(); ++i)
    if (buses[i] == bus_id) return i;
  throw InvalidCase("unknown bus id " + std::to_string(bus_id));
}

int GridCase::availability(int k, int i) const {
  if (k == 0) return 1;
  return contingencies[k - 1].availability[i];
}

double GridCase::contingency_weight(int k) const {
  if (k == 0) return base_case_weight;
  return contingencies[k - 1].weight;
}

void GridCase::validate() const {
  if (horizon < 1) throw InvalidCase("horizon must be >= 1");
  if (buses.empty()) throw InvalidCase("no buses");
  {
    std::vector<int> sorted = buses;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidCase("duplicate bus ids");
  }
  bus_index(slack_bus);
  for (const Line& l : lines) {
    bus_index(l.from);
    bus_index(l.to);
    if (!(l.reactance > 0.0)) throw InvalidCase("line reactance must be positive");
    if (l.capacity_lo && *l.capacity_lo > l.capacity)
      throw InvalidCase("line flow limits crossed");
  }
  for (const Generator& g : generators) {
    bus_index(g.bus);
    if (g.g_min > g.g_max) throw InvalidCase("generator g_min above g_max");
    if (g.min_on < 1 || g.min_off < 1) throw InvalidCase("min on/off times must be >= 1");
    if (g.initial_on != 0 && g.initial_on != 1) throw InvalidCase("initial state must be 0/1");
  }
  for (const WindFarm& w : wind_farms) {
    bus_index(w.bus);
    if (static_cast<int>(w.forecast.size()) != horizon)
      throw InvalidCase("wind forecast length != horizon");
  }
  for (const LoadPoint& d : loads) {
    bus_index(d.bus);
    if (static_cast<int>(d.forecast.size()) != horizon)
      throw InvalidCase("load forecast length != horizon");
  }
  for (const Contingency& c : contingencies) {
    if (static_cast<int>(c.availability.size()) != n_gen())
      throw InvalidCase("contingency availability length != generator count");
    for (int a : c.availability)
      if (a != 0 && a != 1) throw InvalidCase("availability entries must be 0/1");
    if (c.weight < 0.0) throw InvalidCase("contingency weight must be >= 0");
  }
  if (base_case_weight < 0.0) throw InvalidCase("base case weight must be >= 0");
}

PtdfTables build_ptdf(const GridCase& grid) {
  grid.validate();
  const int nb = grid.n_bus();
  const int nl = grid.n_line();

  // Connectivity first: a disconnected network is a data error, not a
  // singular-matrix surprise.
  {
    std::vector<std::vector<int>> adj(nb);
    for (const Line& l : grid.lines) {
      const int a = grid.bus_index(l.from), b = grid.bus_index(l.to);
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<char> seen(nb, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          q.push(w);
        }
    }
    if (reached != nb) throw DisconnectedNetwork("network is not connected");
  }

  const int slack = grid.bus_index(grid.slack_bus);
  // Reduced susceptance matrix (slack row/column removed).
  std::vector<int> red_of(nb, -1);
  int r = 0;
  for (int i = 0; i < nb; ++i)
    if (i != slack) red_of[i] = r++;
  DenseMatrix b_red(nb - 1, nb - 1);
  for (const Line& l : grid.lines) {
    const double b = 1.0 / l.reactance;
    const int i = grid.bus_index(l.from), j = grid.bus_index(l.to);
    if (i != slack) b_red(red_of[i], red_of[i]) += b;
    if (j != slack) b_red(red_of[j], red_of[j]) += b;
    if (i != slack && j != slack) {
      b_red(red_of[i], red_of[j]) -= b;
      b_red(red_of[j], red_of[i]) -= b;
    }
  }
  DenseMatrix theta;  // angles per unit injection: column = injection bus
  if (!dense_solve_multi(b_red, DenseMatrix::identity(nb - 1), theta))
    throw SingularSusceptanceMatrix("reduced susceptance matrix is singular");

  PtdfTables out;
  out.bus_ptdf = DenseMatrix(nl, nb);
  for (int li = 0; li < nl; ++li) {
    const Line& l = grid.lines[li];
    const int i = grid.bus_index(l.from), j = grid.bus_index(l.to);
    const double b = 1.0 / l.reactance;
    for (int inj = 0; inj < nb; ++inj) {
      if (inj == slack) continue;  // slack column stays zero
      const double ti = i == slack ? 0.0 : theta(red_of[i], red_of[inj]);
      const double tj = j == slack ? 0.0 : theta(red_of[j], red_of[inj]);
      out.bus_ptdf(li, inj) = b * (ti - tj);
    }
  }
  out.h_gen = DenseMatrix(nl, grid.n_gen());
  for (int gi = 0; gi < grid.n_gen(); ++gi) {
    const int col = grid.bus_index(grid.generators[gi].bus);
    for (int li = 0; li < nl; ++li) out.h_gen(li, gi) = out.bus_ptdf(li, col);
  }
  out.h_wind = DenseMatrix(nl, grid.n_wind());
  for (int wi = 0; wi < grid.n_wind(); ++wi) {
    const int col = grid.bus_index(grid.wind_farms[wi].bus);
    for (int li = 0; li < nl; ++li) out.h_wind(li, wi) = out.bus_ptdf(li, col);
  }
  out.h_load = DenseMatrix(nl, grid.n_load());
  for (int di = 0; di < grid.n_load(); ++di) {
    const int col = grid.bus_index(grid.loads[di].bus);
    for (int li = 0; li < nl; ++li) out.h_load(li, di) = out.bus_ptdf(li, col);
  }
  return out;
}

}  // namespace scenuc
