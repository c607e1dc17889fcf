#!/usr/bin/env node
// Minimal SMT-LIB 2 front end for the z3-solver WASM build.
// Usage: node z3smt2.js file.smt2
const fs = require('fs');
const { init } = require('z3-solver');

async function main() {
  const file = process.argv[2];
  if (!file) {
    console.error('usage: z3smt2.js <file.smt2>');
    process.exit(2);
  }
  const text = fs.readFileSync(file, 'utf8');
  const { Z3, em } = await init();
  const cfg = Z3.mk_config();
  const ctx = Z3.mk_context(cfg);
  try {
    const out = await Z3.eval_smtlib2_string(ctx, text);
    process.stdout.write(out);
    em.PThread.terminateAllThreads();
    process.exit(0);
  } catch (e) {
    console.error(String(e));
    em.PThread.terminateAllThreads();
    process.exit(1);
  }
}
main();
