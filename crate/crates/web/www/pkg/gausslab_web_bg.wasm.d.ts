/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const classification_table: (a: number) => [number, number];
export const sphere_cone: (a: number) => [number, number];
export const verify_cylinder: (a: number, b: number, c: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
