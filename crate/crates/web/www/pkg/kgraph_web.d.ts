/* tslint:disable */
/* eslint-disable */

/**
 * Condition (A) per vertex.
 */
export function aperiodicity(graph_json: string, budget: number): string;

/**
 * Builder path at `vertex` and its boundary verdict up to `(bound,…,bound)`.
 */
export function boundary_path(graph_json: string, vertex: string, input_order: boolean, bound: number): string;

/**
 * Skeleton JSON of a built-in graph, e.g. `"cycle 3"`.
 */
export function fixture(spec: string): string;

/**
 * Skew product by `{"group", "labels"}` with its verification report.
 */
export function skew_graph(graph_json: string, labels_json: string, window: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly aperiodicity: (a: number, b: number, c: number) => [number, number];
    readonly boundary_path: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly fixture: (a: number, b: number) => [number, number];
    readonly skew_graph: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
