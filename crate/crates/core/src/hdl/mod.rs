// SPDX-License-Identifier: Apache-2.0
//! Verilog-2005 rendering of the chip.
//!
//! The design is fixed (two layers of three neurons, the twelve-register
//! map), so emission is plain templating. The output obeys a small set of
//! structural rules checked by [`lint`]: no SystemVerilog constructs, only
//! flat 1-D ports, one always block per register, distinct loop variables
//! and a synchronous active-high reset that clears every register.

pub mod lint;

use std::fmt::Write as _;
use std::path::Path;

use crate::regfile::{ADDR_LEAK, ADDR_REFRACTORY, ADDR_THRESHOLD, REGISTER_MAP};

pub const NEURON_FILE: &str = "lif_neuron.v";
pub const NETWORK_FILE: &str = "snn_network.v";
pub const SPI_FILE: &str = "spi_peripheral.v";
pub const TOP_FILE: &str = "snn_top.v";

/// Marker lines delimiting the register map comment in the network module.
pub const REGISTER_MAP_BEGIN: &str = "// Register map (begin)";
pub const REGISTER_MAP_END: &str = "// Register map (end)";

/// Emitted source files in dependency order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HdlBundle {
    pub files: Vec<(String, String)>,
}

impl HdlBundle {
    pub fn get(&self, name: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, text)| text.as_str())
    }

    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, text) in &self.files {
            std::fs::write(dir.join(name), text)?;
        }
        Ok(())
    }
}

pub fn emit_verilog() -> HdlBundle {
    HdlBundle {
        files: vec![
            (NEURON_FILE.to_string(), lif_neuron()),
            (NETWORK_FILE.to_string(), snn_network()),
            (SPI_FILE.to_string(), spi_peripheral()),
            (TOP_FILE.to_string(), snn_top()),
        ],
    }
}

/// The register map as comment lines, one per register.
pub fn register_map_comment() -> Vec<String> {
    REGISTER_MAP
        .iter()
        .map(|(addr, name)| format!("//   0x{addr:02X}  {name}"))
        .collect()
}

const PREAMBLE: &str = "// Generated by snn-chip. Do not edit.\n`default_nettype none\n\n";
const POSTAMBLE: &str = "\n`default_nettype wire\n";

fn lif_neuron() -> String {
    let body = r#"// 8-bit leaky integrate-and-fire neuron.
//
// One update per rising clk edge. The membrane integrates `current`, loses
// `leak` with a floor of zero and saturates at 255. The neuron fires when the
// integrated value is strictly greater than `threshold`; the membrane resets
// in the same cycle and is held at zero for `refractory_period` cycles, during
// which input is discarded. `spike` is registered.
module lif_neuron (
    input  wire       clk,
    input  wire       rst,
    input  wire [7:0] current,
    input  wire [7:0] threshold,
    input  wire [7:0] leak,
    input  wire [7:0] refractory_period,
    output reg        spike
);

    reg  [7:0] membrane;
    reg  [7:0] refractory_count;

    wire [8:0] sum;
    wire [8:0] after_leak;
    wire [7:0] integrated;

    assign sum        = {1'b0, membrane} + {1'b0, current};
    assign after_leak = (sum > {1'b0, leak}) ? (sum - {1'b0, leak}) : 9'd0;
    assign integrated = after_leak[8] ? 8'hFF : after_leak[7:0];

    always @(posedge clk) begin
        if (rst) begin
            membrane         <= 8'd0;
            refractory_count <= 8'd0;
            spike            <= 1'b0;
        end else if (refractory_count != 8'd0) begin
            membrane         <= 8'd0;
            refractory_count <= refractory_count - 8'd1;
            spike            <= 1'b0;
        end else if (integrated > threshold) begin
            membrane         <= 8'd0;
            refractory_count <= refractory_period;
            spike            <= 1'b1;
        end else begin
            membrane         <= integrated;
            refractory_count <= 8'd0;
            spike            <= 1'b0;
        end
    end

endmodule
"#;
    format!("{PREAMBLE}{body}{POSTAMBLE}")
}

fn snn_network() -> String {
    let mut v = String::new();
    v.push_str(PREAMBLE);
    v.push_str(
        r#"// Two layers of three neurons with a byte-wide register file.
//
// Layer 1 takes external currents. Layer 2 neuron i takes
// min(255, sum_j w[i][j] * s1[j]) where s1 is the registered layer-1 spike
// vector, so layer 2 sees layer-1 spikes one cycle after they fire. All six
// neurons share threshold, leak and refractory period. Register writes are
// visible from the cycle after write_enable.
module snn_network (
    input  wire        clk,
    input  wire        rst,
    input  wire [23:0] input_currents_flat,
    input  wire        write_enable,
    input  wire [7:0]  write_addr,
    input  wire [7:0]  write_data,
    output wire [2:0]  layer1_spikes,
    output wire [2:0]  layer2_spikes
);

"#,
    );
    let _ = writeln!(v, "    {REGISTER_MAP_BEGIN}");
    for line in register_map_comment() {
        let _ = writeln!(v, "    {line}");
    }
    let _ = writeln!(v, "    {REGISTER_MAP_END}");
    v.push_str(
        r#"
    reg [71:0] weights_flat;
    reg [7:0]  threshold;
    reg [7:0]  leak;
    reg [7:0]  refractory_period;

    always @(posedge clk) begin
        if (rst) begin
            weights_flat      <= 72'd0;
            threshold         <= 8'd0;
            leak              <= 8'd0;
            refractory_period <= 8'd0;
        end else if (write_enable) begin
            case (write_addr)
"#,
    );
    for (addr, _) in REGISTER_MAP.iter().take(9) {
        let _ = writeln!(
            v,
            "                8'h{addr:02X}: weights_flat[{}*8 +: 8] <= write_data;",
            addr
        );
    }
    for (addr, reg) in [
        (ADDR_THRESHOLD, "threshold"),
        (ADDR_LEAK, "leak"),
        (ADDR_REFRACTORY, "refractory_period"),
    ] {
        let _ = writeln!(v, "                8'h{addr:02X}: {reg} <= write_data;");
    }
    v.push_str(
        r#"                default: ;
            endcase
        end
    end

    genvar l1_idx;
    generate
        for (l1_idx = 0; l1_idx < 3; l1_idx = l1_idx + 1) begin : layer1
            lif_neuron u_neuron (
                .clk               (clk),
                .rst               (rst),
                .current           (input_currents_flat[l1_idx*8 +: 8]),
                .threshold         (threshold),
                .leak              (leak),
                .refractory_period (refractory_period),
                .spike             (layer1_spikes[l1_idx])
            );
        end
    endgenerate

    genvar l2_idx;
    generate
        for (l2_idx = 0; l2_idx < 3; l2_idx = l2_idx + 1) begin : layer2
            wire [9:0] weighted_sum;
            wire [7:0] syn_current;

            assign weighted_sum =
"#,
    );
    for j in 0..3 {
        let lead = if j == 0 { "  " } else { "+ " };
        let tail = if j == 2 { ";" } else { "" };
        let _ = writeln!(
            v,
            "                {lead}(layer1_spikes[{j}] ? {{2'b00, weights_flat[(l2_idx*3 + {j})*8 +: 8]}} : 10'd0){tail}"
        );
    }
    v.push_str(
        r#"            assign syn_current = (weighted_sum > 10'd255) ? 8'hFF : weighted_sum[7:0];

            lif_neuron u_neuron (
                .clk               (clk),
                .rst               (rst),
                .current           (syn_current),
                .threshold         (threshold),
                .leak              (leak),
                .refractory_period (refractory_period),
                .spike             (layer2_spikes[l2_idx])
            );
        end
    endgenerate

endmodule
"#,
    );
    v.push_str(POSTAMBLE);
    v
}

fn spi_peripheral() -> String {
    let body = r#"// SPI mode-0 write-only peripheral.
//
// Frames are 16 bits, MSB first: address byte then data byte. MOSI is
// sampled on SCLK rising edges detected in the clk domain, so SCLK must be
// at most half the clk rate. Frames may follow each other inside one
// chip-select window; releasing chip select drops a partial frame. Every
// completed frame pulses write_enable for one clk cycle. The two-flop
// synchronizers add two clk cycles of latency from the pins.
module spi_peripheral (
    input  wire       clk,
    input  wire       rst,
    input  wire       sclk,
    input  wire       mosi,
    input  wire       cs_n,
    output wire       miso,
    output reg        write_enable,
    output reg  [7:0] write_addr,
    output reg  [7:0] write_data
);

    reg  [1:0]  sclk_sync;
    reg  [1:0]  mosi_sync;
    reg  [1:0]  cs_sync;
    reg         sclk_prev;
    reg         cs_prev;
    reg  [15:0] shift_reg;
    reg  [4:0]  bit_count;
    reg         active;

    wire        sclk_rose;
    wire        cs_assert;
    wire        cs_release;
    wire [15:0] shift_base;
    wire [4:0]  count_base;
    wire [15:0] shifted;

    // cs_sync holds the synchronized, inverted chip select (1 = selected).
    assign sclk_rose  = ~sclk_prev & sclk_sync[1];
    assign cs_assert  = ~cs_prev & cs_sync[1];
    assign cs_release = cs_prev & ~cs_sync[1];
    assign shift_base = cs_assert ? 16'd0 : shift_reg;
    assign count_base = cs_assert ? 5'd0 : bit_count;
    assign shifted    = {shift_base[14:0], mosi_sync[1]};
    assign miso       = 1'b0;

    always @(posedge clk) begin
        if (rst) begin
            sclk_sync    <= 2'b00;
            mosi_sync    <= 2'b00;
            cs_sync      <= 2'b00;
            sclk_prev    <= 1'b0;
            cs_prev      <= 1'b0;
            shift_reg    <= 16'd0;
            bit_count    <= 5'd0;
            active       <= 1'b0;
            write_enable <= 1'b0;
            write_addr   <= 8'd0;
            write_data   <= 8'd0;
        end else begin
            sclk_sync    <= {sclk_sync[0], sclk};
            mosi_sync    <= {mosi_sync[0], mosi};
            cs_sync      <= {cs_sync[0], ~cs_n};
            sclk_prev    <= sclk_sync[1];
            cs_prev      <= cs_sync[1];
            write_enable <= 1'b0;
            if (cs_release) begin
                active    <= 1'b0;
                bit_count <= 5'd0;
                shift_reg <= 16'd0;
            end else if (active | cs_assert) begin
                active <= 1'b1;
                if (sclk_rose) begin
                    if (count_base == 5'd15) begin
                        write_enable <= 1'b1;
                        write_addr   <= shifted[15:8];
                        write_data   <= shifted[7:0];
                        bit_count    <= 5'd0;
                        shift_reg    <= 16'd0;
                    end else begin
                        bit_count    <= count_base + 5'd1;
                        shift_reg    <= shifted;
                    end
                end else begin
                    bit_count <= count_base;
                    shift_reg <= shift_base;
                end
            end
        end
    end

endmodule
"#;
    format!("{PREAMBLE}{body}{POSTAMBLE}")
}

fn snn_top() -> String {
    let body = r#"// Chip top level: SPI peripheral programming the network's register file.
module snn_top (
    input  wire        clk,
    input  wire        rst,
    input  wire        sclk,
    input  wire        mosi,
    input  wire        cs_n,
    input  wire [23:0] input_currents_flat,
    output wire        miso,
    output wire [2:0]  layer1_spikes,
    output wire [2:0]  layer2_spikes
);

    wire       write_enable;
    wire [7:0] write_addr;
    wire [7:0] write_data;

    spi_peripheral u_spi (
        .clk          (clk),
        .rst          (rst),
        .sclk         (sclk),
        .mosi         (mosi),
        .cs_n         (cs_n),
        .miso         (miso),
        .write_enable (write_enable),
        .write_addr   (write_addr),
        .write_data   (write_data)
    );

    snn_network u_network (
        .clk                 (clk),
        .rst                 (rst),
        .input_currents_flat (input_currents_flat),
        .write_enable        (write_enable),
        .write_addr          (write_addr),
        .write_data          (write_data),
        .layer1_spikes       (layer1_spikes),
        .layer2_spikes       (layer2_spikes)
    );

endmodule
"#;
    format!("{PREAMBLE}{body}{POSTAMBLE}")
}
