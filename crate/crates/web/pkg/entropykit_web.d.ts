/* tslint:disable */
/* eslint-disable */

/**
 * Rearranged pmf vectors at two intensities, their majorization verdict
 * and the Karamata gap for `f(x) = x^alpha`.
 */
export class MajorizationDemo {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * `(q_0, ..., q_n, r_n)` at the smaller intensity.
     */
    readonly first: Float64Array;
    /**
     * `sum f(first) - sum f(second)`; NaN when the first vector does not
     * majorize the second.
     */
    readonly gap: number;
    readonly majorizes: boolean;
    readonly second: Float64Array;
}

/**
 * `[lambda, H_S, H_R(alpha)]` triples on `points` equally spaced
 * intensities in `(0, lambda_max]`.
 */
export function entropy_curves(alpha: number, lambda_max: number, points: number): Float64Array;

export function majorization_demo(lambda1: number, lambda2: number, alpha: number): MajorizationDemo;

/**
 * `psi(alpha, lambda)` for every alpha, row-major by alpha; each row holds
 * `points` values on the same grid as [`entropy_curves`].
 */
export function psi_curves(alphas: Float64Array, lambda_max: number, points: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_majorizationdemo_free: (a: number, b: number) => void;
    readonly entropy_curves: (a: number, b: number, c: number) => [number, number, number, number];
    readonly majorization_demo: (a: number, b: number, c: number) => [number, number, number];
    readonly majorizationdemo_first: (a: number) => [number, number];
    readonly majorizationdemo_gap: (a: number) => number;
    readonly majorizationdemo_majorizes: (a: number) => number;
    readonly majorizationdemo_second: (a: number) => [number, number];
    readonly psi_curves: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
