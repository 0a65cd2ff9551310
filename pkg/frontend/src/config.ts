// Console configuration. The attribute presets seed the requirements
// editor's suggestion list; analysts can always free-type anything else.

export const ATTRIBUTE_PRESETS: readonly string[] = [
  "cost",
  "throughput",
  "jitter",
  "queueDelay",
  "capacity",
  "errorRate",
  "packetLoss",
  "ART",
  "CRT",
  "CA",
];

export const DEFAULT_API_BASE = "http://127.0.0.1:8000";
