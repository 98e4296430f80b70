/* tslint:disable */
/* eslint-disable */

/**
 * Sphere, type-3 and Takagi rows of the classification, Takagi up to `takagi_max`.
 */
export function classification_table(takagi_max: number): string;

/**
 * Radius of the small-sphere link whose cone over `S^m(a)` has proper biharmonic Gauss map.
 */
export function sphere_cone(m: number): string;

/**
 * Gauss-map verdict for the cylinder over the plane curve with curvature `a + b s + c s²`, `s ∈ [-1, 1]`.
 */
export function verify_cylinder(a: number, b: number, c: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly classification_table: (a: number) => [number, number];
    readonly sphere_cone: (a: number) => [number, number];
    readonly verify_cylinder: (a: number, b: number, c: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
