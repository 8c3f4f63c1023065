import java.util.*;

interface Shape {
	double area();
}

public class EdgeCases {
	// generics in signatures and bodies
	public <T extends Comparable<T>> T max(List<T> items) {
		T best = items.get(0);
		for (T item : items) {
			if (item.compareTo(best) > 0) {
				best = item;
			}
		}
		return best;
	}

	public Map<String, List<Integer>> index(String[] words) {
		Map<String, List<Integer>> out = new HashMap<>();
		for (int i = 0; i < words.length; i++) {
			out.computeIfAbsent(words[i], k -> new ArrayList<>()).add(i);
		}
		return out;
	}

	public Shape unitCircle() {
		return new Shape() {
			public double area() {
				return Math.PI; // body of the anonymous class
			}
		};
	}

	public int sum(int... values) {
		int total = 0;
		for (int v : values) total += v;
		return total;
	}

	public String quote() {
		char c = '\'';
		String s = "if (x) { while(true) } // not code";
		return s + c + "\\\"";
	}

	static class Inner {
		void poke() {
			int[][] grid = new int[3][3];
			grid[1][2] = 7;
		}
	}
}
