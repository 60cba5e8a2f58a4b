package util;

import java.util.HashMap;
import java.util.Map;

public class Cache<K, V> {
    private static int instances = 0;
    private final Map<K, V> entries = new HashMap<>();

    public Cache() {
        instances++;
    }

    public V get(K key) {
        return entries.get(key);
    }

    public void put(K key, V value) {
        entries.put(key, value);
    }

    public static int instances() {
        return instances;
    }

    public static class Stats {
        public int hits;
        public int misses;

        public double ratio() {
            return hits / (double) (hits + misses);
        }
    }
}
