import { SeedApi } from "./api.js";
import { SeedExplorer } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
const explorer = new SeedExplorer(root, new SeedApi());
void explorer.start();
