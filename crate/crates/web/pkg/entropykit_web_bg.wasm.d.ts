/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_majorizationdemo_free: (a: number, b: number) => void;
export const entropy_curves: (a: number, b: number, c: number) => [number, number, number, number];
export const majorization_demo: (a: number, b: number, c: number) => [number, number, number];
export const majorizationdemo_first: (a: number) => [number, number];
export const majorizationdemo_gap: (a: number) => number;
export const majorizationdemo_majorizes: (a: number) => number;
export const majorizationdemo_second: (a: number) => [number, number];
export const psi_curves: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_start: () => void;
