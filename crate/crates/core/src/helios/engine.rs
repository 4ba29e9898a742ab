use crate::corrector::peel_with_parents;
use crate::error::{Error, Result};
use crate::graph::{DecodingGraph, EdgeId, Partition, VertexId};
use crate::helios::registers::{
    ControllerState, CycleKind, GlobalStage, PeRegisters, StageCycles,
};
use crate::helios::trace::CycleTrace;
use crate::noise::Syndrome;
use crate::serial_uf::{Cluster, ClusterSet};

#[derive(Clone, Debug, Default)]
pub struct DecoderOptions {
    /// Run the erasure prologue even when the syndrome has no erased edges.
    pub erasure_mode: bool,
    /// Record every register change.
    pub trace: bool,
    /// Abort after this many simulated cycles.
    pub cycle_limit: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct DecodeResult {
    /// Total cycles until the controller terminates.
    pub cycles: u64,
    /// Cycle count up to and including the last merging cycle: the point at
    /// which every cluster has stopped changing.
    pub quiescence_cycle: u64,
    /// Growing stages, excluding the erasure prologue.
    pub iterations: u32,
    pub stages: StageCycles,
    pub clusters: ClusterSet,
    pub corrections: Vec<EdgeId>,
    /// Final growth of every edge.
    pub growth: Vec<u32>,
    /// Final registers of every PE, indexed by vertex.
    pub registers: Vec<PeRegisters>,
    pub trace: Vec<CycleTrace>,
}

impl DecodeResult {
    pub fn ns(&self, clock_ns: f64) -> f64 {
        self.cycles as f64 * clock_ns
    }
}

/// Where each virtual PE's registers live and what a cycle costs.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    slot: Vec<u32>,
    slots: usize,
    contexts: usize,
}

impl Layout {
    fn flat(g: &DecodingGraph) -> Self {
        Layout {
            slot: (0..g.num_vertices() as u32).collect(),
            slots: g.num_vertices(),
            contexts: 1,
        }
    }

    /// Registers stored per `(context, physical PE)`. Links that cross a band
    /// boundary must join a PE to a context of itself or of a PE on the same
    /// physical row, so the read is served from stored context memory.
    fn contexts(g: &DecodingGraph, p: &Partition) -> Result<Self> {
        p.check_graph(g)?;
        let placements: Vec<_> = g.vertices().map(|v| p.placement(v)).collect();
        let per_round = g.per_round();
        for e in g.edges() {
            let Some(b) = e.b else { continue };
            let (pa, pb) = (placements[e.a.index()], placements[b.index()]);
            if pa.context != pb.context && pa.physical / per_round != pb.physical / per_round {
                return Err(Error::PartitionMismatch);
            }
        }
        let np = p.num_physical();
        Ok(Layout {
            slot: placements
                .iter()
                .map(|pl| (pl.context * np + pl.physical) as u32)
                .collect(),
            slots: p.n() * np,
            contexts: p.n(),
        })
    }

    /// Physical cycles charged for one logical cycle. With `n` contexts every
    /// growing or merging cycle runs `n` sub-graph passes, each followed by a
    /// one-cycle context switch.
    fn cost(&self, kind: CycleKind) -> u64 {
        match kind {
            CycleKind::Decide => 1,
            _ if self.contexts == 1 => 1,
            _ => 2 * self.contexts as u64,
        }
    }
}

/// Cycle-accurate model of the PE array and its controller.
///
/// Every cycle computes all next-state registers from the current ones and
/// commits them together. Only PEs whose inputs changed in the previous cycle
/// are re-evaluated; the rest provably keep their registers.
pub struct HeliosDecoder<'g> {
    g: &'g DecodingGraph,
    layout: Layout,
    options: DecoderOptions,
    regs: Vec<PeRegisters>,
    growth: Vec<u32>,
    active: Vec<VertexId>,
    next_active: Vec<VertexId>,
    stamp: Vec<u32>,
    epoch: u32,
    pending: Vec<(VertexId, PeRegisters)>,
    busy_count: usize,
    codd_count: usize,
}

impl<'g> HeliosDecoder<'g> {
    pub fn new(g: &'g DecodingGraph, options: DecoderOptions) -> Self {
        Self::with_layout(g, Layout::flat(g), options)
    }

    /// Time-multiplexed array running `partition.n()` virtual PEs per physical PE.
    pub fn with_partition(
        g: &'g DecodingGraph,
        partition: &Partition,
        options: DecoderOptions,
    ) -> Result<Self> {
        Ok(Self::with_layout(g, Layout::contexts(g, partition)?, options))
    }

    fn with_layout(g: &'g DecodingGraph, layout: Layout, options: DecoderOptions) -> Self {
        HeliosDecoder {
            g,
            regs: vec![PeRegisters::default(); layout.slots],
            layout,
            options,
            growth: vec![0; g.num_edges()],
            active: Vec::new(),
            next_active: Vec::new(),
            stamp: vec![0; g.num_vertices()],
            epoch: 0,
            pending: Vec::new(),
            busy_count: 0,
            codd_count: 0,
        }
    }

    pub fn graph(&self) -> &'g DecodingGraph {
        self.g
    }

    #[inline]
    fn reg(&self, v: VertexId) -> &PeRegisters {
        &self.regs[self.layout.slot[v.index()] as usize]
    }

    #[inline]
    fn reg_mut(&mut self, v: VertexId) -> &mut PeRegisters {
        &mut self.regs[self.layout.slot[v.index()] as usize]
    }

    #[inline]
    fn is_full(&self, e: EdgeId) -> bool {
        self.growth[e.index()] >= self.g.edge(e).weight
    }

    fn mark(&mut self, v: VertexId) {
        if self.stamp[v.index()] != self.epoch {
            self.stamp[v.index()] = self.epoch;
            self.next_active.push(v);
        }
    }

    fn default_limit(&self) -> u64 {
        let total_weight: u64 = self.g.edges().iter().map(|e| u64::from(e.weight)).sum();
        (total_weight + 4) * (self.g.num_vertices() as u64 + 8) * 4 * self.layout.cost(CycleKind::Merge)
    }

    /// Loads the syndrome into the registers and returns the initial controller state.
    fn init(&mut self, s: &Syndrome) -> Result<ControllerState> {
        s.check(self.g)?;
        let g = self.g;
        self.growth.fill(0);
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.next_active.clear();
        let mut bnd = vec![false; g.num_vertices()];
        for &e in s.erased_edges() {
            self.growth[e.index()] = g.edge(e).weight;
            let edge = g.edge(e);
            if edge.is_boundary() {
                bnd[edge.a.index()] = true;
            }
            for v in edge.endpoints() {
                self.mark(v);
            }
        }
        for v in g.vertices() {
            let r = PeRegisters::init(v, s.is_defect(v), bnd[v.index()]);
            *self.reg_mut(v) = r;
        }
        std::mem::swap(&mut self.active, &mut self.next_active);
        self.busy_count = 0;
        self.codd_count = s.defect_count();
        let prologue = self.options.erasure_mode || !s.erased_edges().is_empty();
        Ok(ControllerState {
            stage: GlobalStage::Growing,
            settle: 0,
            prologue,
        })
    }

    /// One growing cycle. Returns the growth changes for tracing.
    fn grow(&mut self, trace: Option<&mut CycleTrace>) {
        let g = self.g;
        self.epoch = self.epoch.wrapping_add(1).max(1);
        self.next_active.clear();
        let mut changed_growth: Vec<u32> = Vec::new();
        let mut newly_bnd: Vec<VertexId> = Vec::new();
        for v in g.vertices() {
            let rv = *self.reg(v);
            if !rv.odd {
                continue;
            }
            for &e in g.incident(v) {
                let edge = g.edge(e);
                if self.growth[e.index()] >= edge.weight {
                    continue;
                }
                if let Some(u) = edge.other(v) {
                    if self.reg(u).cid == rv.cid {
                        continue;
                    }
                }
                let gr = &mut self.growth[e.index()];
                *gr += 1;
                changed_growth.push(e.0);
                if *gr == edge.weight {
                    match edge.b {
                        Some(b) => {
                            self.mark(edge.a);
                            self.mark(b);
                        }
                        None => newly_bnd.push(edge.a),
                    }
                }
            }
        }
        let mut changes = Vec::new();
        for v in newly_bnd {
            let before = *self.reg(v);
            if !before.boundary_grown {
                self.reg_mut(v).boundary_grown = true;
                changes.push((v, before, *self.reg(v)));
            }
            self.mark(v);
        }
        std::mem::swap(&mut self.active, &mut self.next_active);
        if let Some(t) = trace {
            changed_growth.sort_unstable();
            changed_growth.dedup();
            t.growth = changed_growth
                .into_iter()
                .map(|e| (e, self.growth[e as usize]))
                .collect();
            t.changes = changes;
        }
    }

    fn next_registers(&self, v: VertexId) -> PeRegisters {
        let g = self.g;
        let rv = *self.reg(v);
        let mut best: Option<(u32, u32)> = None;
        let mut st_odd = rv.m;
        let mut st_bnd = rv.boundary_grown;
        let mut busy = false;
        for &e in g.incident(v) {
            if !self.is_full(e) {
                continue;
            }
            let Some(u) = g.edge(e).other(v) else { continue };
            let ru = self.reg(u);
            if best.is_none_or(|b| (ru.cid, u.0) < b) {
                best = Some((ru.cid, u.0));
            }
            if ru.parent == v.0 {
                st_odd ^= ru.st_odd;
                st_bnd |= ru.st_bnd;
            }
            busy |= ru.cid != rv.cid || ru.odd != rv.odd;
        }
        let (cid, parent) = match best {
            Some((c, u)) if c < rv.cid => (c, u),
            _ => (rv.cid, rv.parent),
        };
        let odd = if parent == v.0 {
            st_odd && !st_bnd
        } else {
            self.reg(VertexId(parent)).odd
        };
        busy |= rv.st_odd != st_odd
            || rv.st_bnd != st_bnd
            || (rv.parent == v.0 && rv.odd != (rv.st_odd && !rv.st_bnd));
        PeRegisters {
            cid,
            parent,
            odd,
            codd: rv.odd,
            st_odd,
            st_bnd,
            busy,
            ..rv
        }
    }

    /// One merging cycle over the active PEs. Returns true if any register changed.
    fn merge(&mut self, trace: Option<&mut CycleTrace>) -> bool {
        let g = self.g;
        self.pending.clear();
        let active = std::mem::take(&mut self.active);
        for &v in &active {
            let next = self.next_registers(v);
            if next != *self.reg(v) {
                self.pending.push((v, next));
            }
        }
        self.active = active;
        self.epoch = self.epoch.wrapping_add(1).max(1);
        self.next_active.clear();
        let pending = std::mem::take(&mut self.pending);
        let mut changes = Vec::new();
        for &(v, next) in &pending {
            let before = *self.reg(v);
            self.busy_count = self.busy_count + usize::from(next.busy) - usize::from(before.busy);
            self.codd_count = self.codd_count + usize::from(next.codd) - usize::from(before.codd);
            *self.reg_mut(v) = next;
            if trace.is_some() {
                changes.push((v, before, next));
            }
            if before.visible() != next.visible() {
                self.mark(v);
                for &e in g.incident(v) {
                    if self.is_full(e) {
                        if let Some(u) = g.edge(e).other(v) {
                            self.mark(u);
                        }
                    }
                }
            }
        }
        let changed = !pending.is_empty();
        self.pending = pending;
        std::mem::swap(&mut self.active, &mut self.next_active);
        if let Some(t) = trace {
            t.changes = changes;
        }
        changed
    }

    pub fn decode(&mut self, s: &Syndrome) -> Result<DecodeResult> {
        let mut ctrl = self.init(s)?;
        let limit = self.options.cycle_limit.unwrap_or_else(|| self.default_limit());
        let mut stages = StageCycles::default();
        let mut cycles = 0u64;
        let mut quiescence = 0u64;
        let mut iterations = 0u32;
        let mut traces = Vec::new();

        while ctrl.stage != GlobalStage::Terminate {
            if cycles >= limit {
                return Err(Error::CycleLimit(cycles));
            }
            let mut trace = self.options.trace.then(|| CycleTrace {
                cycle: 0,
                kind: CycleKind::Grow,
                changes: Vec::new(),
                growth: Vec::new(),
            });
            let in_prologue = ctrl.prologue;
            let kind = match ctrl.stage {
                GlobalStage::Growing => {
                    if in_prologue {
                        // Entry slot of the prologue: erased edges are already grown.
                        self.epoch = self.epoch.wrapping_add(1).max(1);
                    } else {
                        self.grow(trace.as_mut());
                        iterations += 1;
                    }
                    ctrl.stage = GlobalStage::Merging;
                    ctrl.settle = 2;
                    CycleKind::Grow
                }
                GlobalStage::Merging if ctrl.settle > 0 => {
                    ctrl.settle -= 1;
                    self.merge(trace.as_mut());
                    CycleKind::Settle
                }
                GlobalStage::Merging if self.busy_count > 0 => {
                    self.merge(trace.as_mut());
                    CycleKind::Merge
                }
                GlobalStage::Merging => {
                    ctrl.stage = if ctrl.prologue || self.codd_count > 0 {
                        GlobalStage::Growing
                    } else {
                        GlobalStage::Terminate
                    };
                    ctrl.prologue = false;
                    CycleKind::Decide
                }
                GlobalStage::Terminate => unreachable!(),
            };
            let cost = self.layout.cost(kind);
            cycles += cost;
            if matches!(kind, CycleKind::Settle | CycleKind::Merge) {
                quiescence = cycles;
            }
            let slot = if in_prologue {
                &mut stages.prologue
            } else {
                match kind {
                    CycleKind::Grow => &mut stages.grow,
                    CycleKind::Settle => &mut stages.settle,
                    CycleKind::Merge => &mut stages.merge,
                    CycleKind::Decide => &mut stages.decide,
                }
            };
            *slot += cost;
            if let Some(mut t) = trace {
                t.cycle = cycles;
                t.kind = kind;
                traces.push(t);
            }
        }

        let registers: Vec<PeRegisters> = self.g.vertices().map(|v| *self.reg(v)).collect();
        let clusters = self.extract_clusters(&registers);
        let mut corrections = Vec::new();
        for c in clusters.clusters() {
            corrections.extend(peel_with_parents(
                self.g,
                c,
                |v| VertexId(registers[v.index()].parent),
                s,
            )?);
        }
        corrections.sort_unstable();
        Ok(DecodeResult {
            cycles,
            quiescence_cycle: quiescence,
            iterations,
            stages,
            clusters,
            corrections,
            growth: self.growth.clone(),
            registers,
            trace: traces,
        })
    }

    /// Clusters read off the final `cid` registers; parity and boundary
    /// contact come from the root's subtree registers.
    fn extract_clusters(&self, regs: &[PeRegisters]) -> ClusterSet {
        let g = self.g;
        let mut index: Vec<Option<usize>> = vec![None; g.num_vertices()];
        let mut clusters: Vec<Cluster> = Vec::new();
        for v in g.vertices() {
            let r = &regs[v.index()];
            if r.m && index[r.cid as usize - 1].is_none() {
                let root = &regs[r.cid as usize - 1];
                index[r.cid as usize - 1] = Some(clusters.len());
                clusters.push(Cluster {
                    root: VertexId(r.cid),
                    members: Vec::new(),
                    parity: root.st_odd,
                    boundary: root.st_bnd,
                    edges: Vec::new(),
                });
            }
        }
        for v in g.vertices() {
            if let Some(k) = index[regs[v.index()].cid as usize - 1] {
                clusters[k].members.push(v);
            }
        }
        for e in g.edge_ids().filter(|&e| self.is_full(e)) {
            if let Some(k) = index[regs[g.edge(e).a.index()].cid as usize - 1] {
                clusters[k].edges.push(e);
            }
        }
        ClusterSet::from_clusters(clusters)
    }
}

/// Decodes with a one-PE-per-vertex array.
pub fn decode_distributed(g: &DecodingGraph, s: &Syndrome) -> Result<DecodeResult> {
    HeliosDecoder::new(g, DecoderOptions::default()).decode(s)
}

/// Decodes with `n` virtual PEs time-multiplexed on each physical PE.
pub fn decode_context_switched(g: &DecodingGraph, s: &Syndrome, n: usize) -> Result<DecodeResult> {
    let p = crate::graph::partition(g, n)?;
    HeliosDecoder::with_partition(g, &p, DecoderOptions::default())?.decode(s)
}
