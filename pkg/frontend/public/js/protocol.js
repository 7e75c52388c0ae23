/** Session protocol types, mirroring docs/protocol.md. */
export {};
