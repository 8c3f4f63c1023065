package demo;

import java.util.List;

// small arithmetic helper used by the tests
public class Calculator {
	private int accumulator; // running total
	private List<String> log;

	public Calculator(int seed) {
		this.accumulator = seed;
	}

	public int add(int value) {
		accumulator += value;
		return accumulator;
	}

	/* overload: sums a pair before accumulating */
	public int add(int a, int b) {
		int sum = a + b;
		accumulator += sum;
		return accumulator;
	}

	public int apply(char op, int value) {
		switch (op) {
			case '+':
				accumulator += value;
				break;
			case '-':
				accumulator -= value;
				break;
			case '*':
				accumulator *= value;
				break;
			default:
				throw new IllegalArgumentException("bad op: " + op);
		}
		return accumulator;
	}

	public int parse(String text) {
		try {
			return Integer.parseInt(text.trim());
		} catch (NumberFormatException e) {
			return 0;
		}
	}

	public String describe(boolean verbose) {
		String tag = verbose ? "accumulator = " : "= ";
		// braces inside the literal must not confuse anything: {{(["'
		return tag + accumulator + " {ok}";
	}

	public int countdown(int n) {
		int steps = 0;
		do {
			n = n / 2;
			steps++;
		} while (n > 0 && steps < 64);
		return steps;
	}

	public boolean inRange(int lo, int hi) {
		return accumulator >= lo && accumulator <= hi || accumulator == 0;
	}
}
